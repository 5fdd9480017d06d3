/**
 * @file expression.hpp
 * @brief Hash-consed scalar expression DAG in x, y, z with exact symbolic differentiation,
 *        compiled evaluation tapes, and vector fields defined by such expressions.
 */
#pragma once

#include "quadcurl/field.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

namespace quadcurl::sym {

enum class Op : std::uint8_t { Const, Var, Add, Mul, Sin, Cos, Pow };

using Id = int;

struct Node {
    Op op = Op::Const;
    Id a = -1;
    Id b = -1;
    int n = 0;         // variable index for Var, exponent for Pow
    double value = 0;  // Const only
};

/// Owns all nodes. Structurally equal nodes share one id, and children always precede parents.
class Pool {
public:
    Pool();

    Id constant(double v);
    Id var(int i);
    Id add(Id a, Id b);
    Id sub(Id a, Id b);
    Id mul(Id a, Id b);
    Id neg(Id a);
    Id sin(Id a);
    Id cos(Id a);
    Id pow(Id a, int n);

    /// d e / d x_i, memoized.
    Id diff(Id e, int i);

    [[nodiscard]] const Node& node(Id id) const { return nodes_[static_cast<std::size_t>(id)]; }
    [[nodiscard]] std::size_t size() const { return nodes_.size(); }
    [[nodiscard]] bool is_const(Id id, double v) const;

    /// Direct recursive-free evaluation of one expression (slow path, for tests).
    [[nodiscard]] double evaluate(Id e, const Vec3& x) const;

private:
    Id intern(const Node& n);

    struct KeyHash {
        std::size_t operator()(const Node& n) const;
    };
    struct KeyEq {
        bool operator()(const Node& l, const Node& r) const;
    };

    std::vector<Node> nodes_;
    std::unordered_map<Node, Id, KeyHash, KeyEq> index_;
    std::unordered_map<std::uint64_t, Id> diff_memo_;
    Id zero_ = -1;
    Id one_ = -1;
};

/// The nodes reachable from a set of roots, in evaluation order.
class Tape {
public:
    Tape() = default;
    Tape(const Pool& pool, const std::vector<Id>& roots);

    /// Evaluates all roots at x into out (size = number of roots).
    void evaluate(const Vec3& x, double* out) const;
    [[nodiscard]] std::size_t num_roots() const { return roots_.size(); }
    [[nodiscard]] std::size_t length() const { return code_.size(); }

private:
    struct Instr {
        Op op;
        int a;
        int b;
        int n;
        double value;
    };
    std::vector<Instr> code_;
    std::vector<int> roots_;  // slots of the roots
};

using Vec3Expr = std::array<Id, 3>;

[[nodiscard]] Vec3Expr curl(Pool& pool, const Vec3Expr& u);

/// u = (0, 3π s_x³ s_y³ s_z² c_z, −3π s_x³ s_z³ s_y² c_y) with s_t = sin(π t), c_t = cos(π t).
[[nodiscard]] Vec3Expr example1_field(Pool& pool);

/// Polynomial field as an expression.
[[nodiscard]] Vec3Expr polynomial_field(Pool& pool, const VectorPolynomial<double>& p);

/// A vector field given symbolically. All derivatives are exact symbolic derivatives.
class SymbolicField : public VectorField {
public:
    SymbolicField(std::shared_ptr<Pool> pool, const Vec3Expr& u);

    [[nodiscard]] Vec3 value(const Vec3& x) const override;
    [[nodiscard]] Vec3 curl(const Vec3& x) const override;
    [[nodiscard]] Mat3 curl_jacobian(const Vec3& x) const override;
    [[nodiscard]] std::array<Mat3, 3> curl_hessian(const Vec3& x) const override;
    [[nodiscard]] Vec3 curl_curl(const Vec3& x) const override;
    /// (curl)^4 u + u
    [[nodiscard]] Vec3 source(const Vec3& x) const;
    /// div(curl u), which must vanish.
    [[nodiscard]] double div_curl(const Vec3& x) const;

    [[nodiscard]] const Pool& pool() const { return *pool_; }
    [[nodiscard]] const Vec3Expr& source_expr() const { return f_; }

private:
    [[nodiscard]] Vec3 eval3(const Tape& t, const Vec3& x) const;

    std::shared_ptr<Pool> pool_;
    Vec3Expr u_{};
    Vec3Expr c_{};
    Vec3Expr cc_{};
    Vec3Expr f_{};
    Tape tu_, tc_, tj_, th_, tcc_, tf_, tdiv_;
};

/// f = (curl)^4 u + u as a point function.
[[nodiscard]] std::function<Vec3(const Vec3&)> manufactured_rhs(const std::shared_ptr<const SymbolicField>& u);

/// Maximum |div(curl u)| over the given points.
[[nodiscard]] double max_div_curl(const SymbolicField& u, const std::vector<Vec3>& points);

}  // namespace quadcurl::sym
