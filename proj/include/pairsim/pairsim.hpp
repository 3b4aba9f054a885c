// Copyright (c) 2026 The pairsim developers
// SPDX-License-Identifier: MIT

#pragma once

#include "pairsim/analysis.hpp"
#include "pairsim/compiler.hpp"
#include "pairsim/config.hpp"
#include "pairsim/dft.hpp"
#include "pairsim/io.hpp"
#include "pairsim/linalg.hpp"
#include "pairsim/models.hpp"
#include "pairsim/pauli.hpp"
#include "pairsim/schedule.hpp"
#include "pairsim/simulator.hpp"
#include "pairsim/spectroscopy.hpp"
#include "pairsim/types.hpp"
#include "pairsim/version.hpp"
