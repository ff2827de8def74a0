#pragma once

#include "omegalab/cli.hpp"
#include "omegalab/constructions.hpp"
#include "omegalab/core.hpp"
#include "omegalab/finite_oracle.hpp"
#include "omegalab/pairing.hpp"
#include "omegalab/reductions.hpp"
#include "omegalab/report.hpp"
#include "omegalab/rigidity.hpp"
#include "omegalab/sets.hpp"
#include "omegalab/specs.hpp"
