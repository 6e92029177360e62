#pragma once

// Core library; json_io.hpp and cli.hpp additionally need the vendor headers.

#include "ricker/constant.hpp"
#include "ricker/embedding.hpp"
#include "ricker/error.hpp"
#include "ricker/model.hpp"
#include "ricker/orbit.hpp"
#include "ricker/periodic.hpp"
#include "ricker/stability.hpp"
#include "ricker/sweep.hpp"
#include "ricker/verdict.hpp"
