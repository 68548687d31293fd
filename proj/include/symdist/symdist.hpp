#pragma once

#include "symdist/codes.hpp"
#include "symdist/errors.hpp"
#include "symdist/hadamard.hpp"
#include "symdist/interval_log.hpp"
#include "symdist/numtheory.hpp"
#include "symdist/phi.hpp"
#include "symdist/poly.hpp"
#include "symdist/primes.hpp"
#include "symdist/rational.hpp"
#include "symdist/scheme.hpp"
#include "symdist/sweep.hpp"
