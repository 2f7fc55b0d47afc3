#pragma once
// Umbrella header.

#include "nahm/core.hpp"
#include "nahm/series.hpp"
#include "nahm/cache.hpp"
#include "nahm/special.hpp"
#include "nahm/asymptotics.hpp"
#include "nahm/verify.hpp"
#include "nahm/csv.hpp"
