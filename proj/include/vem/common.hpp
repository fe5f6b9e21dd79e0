// Shared aliases and error types for the polygonal VEM Oseen solver.

#ifndef VEM_COMMON_HPP
#define VEM_COMMON_HPP

#include <Eigen/Dense>
#include <functional>
#include <stdexcept>
#include <string>

namespace vem {

using Vector2 = Eigen::Vector2d;
using Matrix2 = Eigen::Matrix2d;
using VectorX = Eigen::VectorXd;
using MatrixX = Eigen::MatrixXd;

/// Scalar field on the plane.
using ScalarField = std::function<double(const Vector2&)>;
/// Vector field on the plane.
using VectorField = std::function<Vector2(const Vector2&)>;
/// 2x2 tensor field (row i = gradient of component i).
using TensorField = std::function<Matrix2(const Vector2&)>;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegenerateCell : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct GenerationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct TriangulationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SingularProjector : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SolverFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SingularMatrix : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DimensionMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MissingExact : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace vem

#endif
