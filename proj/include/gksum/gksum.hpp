#pragma once

// Umbrella header for the whole engine.

#include "gksum/bivariate.hpp"
#include "gksum/errata.hpp"
#include "gksum/errors.hpp"
#include "gksum/eval.hpp"
#include "gksum/expr.hpp"
#include "gksum/gosper.hpp"
#include "gksum/json_io.hpp"
#include "gksum/limits.hpp"
#include "gksum/linear_solve.hpp"
#include "gksum/lsumming.hpp"
#include "gksum/named_sequences.hpp"
#include "gksum/parser.hpp"
#include "gksum/polynomial.hpp"
#include "gksum/printer.hpp"
#include "gksum/rational.hpp"
#include "gksum/rational_function.hpp"
#include "gksum/rng.hpp"
#include "gksum/term_ratio.hpp"
#include "gksum/verifier.hpp"
