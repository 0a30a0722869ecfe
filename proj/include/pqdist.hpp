#pragma once

#include "pqdist/exterior_core.hpp"
#include "pqdist/io.hpp"
#include "pqdist/lab.hpp"
#include "pqdist/metric.hpp"
#include "pqdist/version.hpp"
