#pragma once

#include "omegalab/almost_prime.hpp"
#include "omegalab/averaging.hpp"
#include "omegalab/census.hpp"
#include "omegalab/common.hpp"
#include "omegalab/correlation.hpp"
#include "omegalab/io.hpp"
#include "omegalab/oracle.hpp"
#include "omegalab/pretentious.hpp"
#include "omegalab/reduction.hpp"
#include "omegalab/sieve.hpp"
