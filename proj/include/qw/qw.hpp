#pragma once

#include "qw/error.hpp"
#include "qw/word.hpp"
#include "qw/match.hpp"
#include "qw/stream.hpp"
#include "qw/factor_index.hpp"
#include "qw/quasiperiod.hpp"
#include "qw/calculus.hpp"
#include "qw/complexity.hpp"
#include "qw/ergodic.hpp"
#include "qw/rauzy.hpp"
#include "qw/sturmian.hpp"
#include "qw/qpzip.hpp"
#include "qw/descriptor.hpp"
