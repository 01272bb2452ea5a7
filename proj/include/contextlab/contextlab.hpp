// contextlab.hpp
// Umbrella header.

#pragma once

#include "contextlab/errors.hpp"
#include "contextlab/geometry.hpp"
#include "contextlab/gpt.hpp"
#include "contextlab/lp.hpp"
#include "contextlab/noise.hpp"
#include "contextlab/pom.hpp"
#include "contextlab/robustness.hpp"
#include "contextlab/serialization.hpp"
#include "contextlab/sweep.hpp"
