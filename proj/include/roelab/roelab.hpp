// Copyright 2026 The roelab Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef ROELAB_ROELAB_HPP
#define ROELAB_ROELAB_HPP

#include "roelab/block_operator.hpp"
#include "roelab/coarse_map.hpp"
#include "roelab/concentration.hpp"
#include "roelab/covering.hpp"
#include "roelab/fibered_space.hpp"
#include "roelab/locality.hpp"
#include "roelab/metric_space.hpp"
#include "roelab/parallel.hpp"
#include "roelab/rademacher.hpp"
#include "roelab/rigidity.hpp"

#endif  // ROELAB_ROELAB_HPP
