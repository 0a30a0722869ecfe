#pragma once

// Complex linear and exterior algebra on C^n.
#include "pqdist/exterior/complex_vector.hpp"
#include "pqdist/exterior/cross.hpp"
#include "pqdist/exterior/gram_schmidt.hpp"
#include "pqdist/exterior/hodge.hpp"
#include "pqdist/exterior/multivector.hpp"
