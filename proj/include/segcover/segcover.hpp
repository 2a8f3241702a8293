#pragma once

#include "segcover/core.hpp"
#include "segcover/io.hpp"
#include "segcover/minsum.hpp"
#include "segcover/makespan.hpp"
#include "segcover/refine.hpp"
#include "segcover/exact.hpp"
#include "segcover/hardness.hpp"
#include "segcover/bench.hpp"
