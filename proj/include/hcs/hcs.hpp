// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hcs Authors

#pragma once

#include "hcs/angular.hpp"
#include "hcs/errors.hpp"
#include "hcs/fock1d.hpp"
#include "hcs/hydrogen.hpp"
#include "hcs/phase.hpp"
#include "hcs/position.hpp"
#include "hcs/quadrature.hpp"
#include "hcs/specfun.hpp"
#include "hcs/weights.hpp"
