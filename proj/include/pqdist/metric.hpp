#pragma once

// Distance matrices and the distances they induce on pure states.
#include "pqdist/metric/distance_matrix.hpp"
#include "pqdist/metric/distances.hpp"
#include "pqdist/metric/embed.hpp"
#include "pqdist/metric/spectral.hpp"
