// Copyright (c) 2026 The circmat Authors
// Licensed under the Apache License Version 2.0. See LICENSE file in the project root.

#pragma once

#include "circmat/car.hpp"
#include "circmat/circulant.hpp"
#include "circmat/common.hpp"
#include "circmat/fields.hpp"
#include "circmat/kernels.hpp"
#include "circmat/linkage.hpp"
#include "circmat/matern.hpp"
#include "circmat/rng.hpp"
#include "circmat/spectral.hpp"
