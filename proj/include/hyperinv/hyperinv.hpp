// SPDX-License-Identifier: Apache-2.0
#ifndef HYPERINV_HYPERINV_HPP
#define HYPERINV_HYPERINV_HPP

#include "hyperinv/audit.hpp"
#include "hyperinv/bloch.hpp"
#include "hyperinv/error.hpp"
#include "hyperinv/hyperdet.hpp"
#include "hyperinv/hypermatrix.hpp"
#include "hyperinv/invariants.hpp"
#include "hyperinv/sampling.hpp"

#endif  // HYPERINV_HYPERINV_HPP
