#pragma once

#include "uvest/distributions.hpp"
#include "uvest/estimators.hpp"
#include "uvest/experiments.hpp"
#include "uvest/random.hpp"
#include "uvest/risk.hpp"
