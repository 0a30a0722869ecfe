#pragma once

#include "pqdist/io/commands.hpp"
#include "pqdist/io/json_codec.hpp"
#include "pqdist/io/report_io.hpp"
