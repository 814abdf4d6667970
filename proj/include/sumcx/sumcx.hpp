#pragma once

#include "sumcx/cochain_ops.hpp"
#include "sumcx/combinatorics.hpp"
#include "sumcx/errors.hpp"
#include "sumcx/experiments.hpp"
#include "sumcx/group.hpp"
#include "sumcx/integer_rank.hpp"
#include "sumcx/spectra.hpp"
#include "sumcx/sum_complex.hpp"
#include "sumcx/tuple_fourier.hpp"
#include "sumcx/verify.hpp"
