#pragma once

#include "uvest/risk/dominance.hpp"
#include "uvest/risk/exact.hpp"
#include "uvest/risk/loss.hpp"
#include "uvest/risk/monte_carlo.hpp"
#include "uvest/risk/report.hpp"
#include "uvest/risk/truncation.hpp"
