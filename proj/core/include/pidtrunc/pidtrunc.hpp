#pragma once

#include "pidtrunc/distribution.hpp"
#include "pidtrunc/errors.hpp"
#include "pidtrunc/estimator.hpp"
#include "pidtrunc/experiments.hpp"
#include "pidtrunc/io.hpp"
#include "pidtrunc/parallel.hpp"
#include "pidtrunc/pid.hpp"
#include "pidtrunc/random.hpp"
#include "pidtrunc/synergy.hpp"
#include "pidtrunc/xor_model.hpp"
