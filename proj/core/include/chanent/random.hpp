/**
 * This code is part of chanent.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#ifndef CHANENT_RANDOM_HPP
#define CHANENT_RANDOM_HPP

#include <cstdint>
#include <random>

#include "chanent/channels.hpp"

namespace chanent::rng {

using Engine = std::mt19937_64;

Matrix gaussian_matrix(Engine& eng, int rows, int cols);
/// Haar-distributed unitary via QR of a Ginibre matrix.
Matrix haar_unitary(Engine& eng, int d);
Vector random_pure_state(Engine& eng, int d);
/// Full-rank random density matrix (Hilbert-Schmidt-like ensemble).
Matrix random_state(Engine& eng, int d);
/// Random CPTP channel from a Stinespring isometry with environment dimension
/// `env_dim` (defaults to in_dim * out_dim).
Channel random_channel(Engine& eng, const SystemDims& dims, int env_dim = 0);
/// Random mixture of Weyl products on the given dims; always tele-covariant.
Channel random_weyl_mixture(Engine& eng, const SystemDims& dims, int terms = 0);

}  // namespace chanent::rng

#endif
