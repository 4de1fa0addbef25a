#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Core>

namespace permtopic {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using VectorXd = Vector<double>;
using MatrixXd = Matrix<double>;
using VectorXi = Vector<std::int64_t>;
using MatrixXi = Matrix<std::int64_t>;

// All samplers take an explicit engine so runs are reproducible from a seed.
using Rng = std::mt19937_64;

}  // namespace permtopic
