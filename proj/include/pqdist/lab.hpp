#pragma once

#include "pqdist/lab/checks.hpp"
#include "pqdist/lab/counterexample.hpp"
#include "pqdist/lab/fuzz.hpp"
#include "pqdist/lab/minimizer.hpp"
#include "pqdist/lab/rng.hpp"
#include "pqdist/lab/sampling.hpp"
