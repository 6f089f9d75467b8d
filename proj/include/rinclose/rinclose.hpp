#pragma once

#include "rinclose/bench.hpp"
#include "rinclose/core.hpp"
#include "rinclose/dataio.hpp"
#include "rinclose/kernels.hpp"
#include "rinclose/miners.hpp"
#include "rinclose/oracle.hpp"
#include "rinclose/syngen.hpp"
#include "rinclose/verify.hpp"
