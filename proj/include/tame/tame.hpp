#pragma once

#include "tame/analyzer.hpp"
#include "tame/corpus.hpp"
#include "tame/coset_ball.hpp"
#include "tame/coset_graph.hpp"
#include "tame/decomposition.hpp"
#include "tame/engine.hpp"
#include "tame/error.hpp"
#include "tame/export.hpp"
#include "tame/homology.hpp"
#include "tame/presentation.hpp"
#include "tame/resolve.hpp"
#include "tame/smith.hpp"
#include "tame/stallings.hpp"
#include "tame/tietze.hpp"
#include "tame/todd_coxeter.hpp"
#include "tame/two_complex.hpp"
#include "tame/word.hpp"
