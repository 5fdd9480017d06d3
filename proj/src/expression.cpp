/**
 * @file expression.cpp
 * @brief Expression DAG construction, simplification, differentiation, and evaluation.
 */
#include "quadcurl/expression.hpp"

#include <cmath>
#include <numbers>

namespace quadcurl::sym {

std::size_t Pool::KeyHash::operator()(const Node& n) const
{
    std::size_t h = static_cast<std::size_t>(n.op);
    auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
    mix(static_cast<std::size_t>(n.a + 1));
    mix(static_cast<std::size_t>(n.b + 1));
    mix(static_cast<std::size_t>(n.n));
    mix(std::hash<double>{}(n.value));
    return h;
}

bool Pool::KeyEq::operator()(const Node& l, const Node& r) const
{
    return l.op == r.op && l.a == r.a && l.b == r.b && l.n == r.n && l.value == r.value;
}

Pool::Pool()
{
    zero_ = constant(0.0);
    one_ = constant(1.0);
}

Id Pool::intern(const Node& n)
{
    auto it = index_.find(n);
    if (it != index_.end()) {
        return it->second;
    }
    const Id id = static_cast<Id>(nodes_.size());
    nodes_.push_back(n);
    index_.emplace(n, id);
    return id;
}

bool Pool::is_const(Id id, double v) const
{
    const Node& n = node(id);
    return n.op == Op::Const && n.value == v;
}

Id Pool::constant(double v)
{
    Node n;
    n.op = Op::Const;
    n.value = v == 0.0 ? 0.0 : v;  // fold -0 into +0
    return intern(n);
}

Id Pool::var(int i)
{
    Node n;
    n.op = Op::Var;
    n.n = i;
    return intern(n);
}

Id Pool::add(Id a, Id b)
{
    if (is_const(a, 0.0)) {
        return b;
    }
    if (is_const(b, 0.0)) {
        return a;
    }
    if (node(a).op == Op::Const && node(b).op == Op::Const) {
        return constant(node(a).value + node(b).value);
    }
    if (a > b) {
        std::swap(a, b);
    }
    if (a == b) {
        return mul(constant(2.0), a);
    }
    Node n;
    n.op = Op::Add;
    n.a = a;
    n.b = b;
    return intern(n);
}

Id Pool::mul(Id a, Id b)
{
    if (is_const(a, 0.0) || is_const(b, 0.0)) {
        return zero_;
    }
    if (is_const(a, 1.0)) {
        return b;
    }
    if (is_const(b, 1.0)) {
        return a;
    }
    const bool ca = node(a).op == Op::Const;
    const bool cb = node(b).op == Op::Const;
    if (ca && cb) {
        return constant(node(a).value * node(b).value);
    }
    if (cb) {
        std::swap(a, b);
    }
    // Keep constants on the left and merge nested constant factors.
    if (node(a).op == Op::Const && node(b).op == Op::Mul && node(node(b).a).op == Op::Const) {
        return mul(constant(node(a).value * node(node(b).a).value), node(b).b);
    }
    if (node(a).op != Op::Const && a > b) {
        std::swap(a, b);
    }
    Node n;
    n.op = Op::Mul;
    n.a = a;
    n.b = b;
    return intern(n);
}

Id Pool::neg(Id a) { return mul(constant(-1.0), a); }

Id Pool::sub(Id a, Id b) { return add(a, neg(b)); }

Id Pool::sin(Id a)
{
    if (node(a).op == Op::Const) {
        return constant(std::sin(node(a).value));
    }
    Node n;
    n.op = Op::Sin;
    n.a = a;
    return intern(n);
}

Id Pool::cos(Id a)
{
    if (node(a).op == Op::Const) {
        return constant(std::cos(node(a).value));
    }
    Node n;
    n.op = Op::Cos;
    n.a = a;
    return intern(n);
}

Id Pool::pow(Id a, int k)
{
    if (k == 0) {
        return one_;
    }
    if (k == 1) {
        return a;
    }
    if (node(a).op == Op::Const) {
        return constant(std::pow(node(a).value, k));
    }
    Node n;
    n.op = Op::Pow;
    n.a = a;
    n.n = k;
    return intern(n);
}

Id Pool::diff(Id e, int i)
{
    const std::uint64_t key = (static_cast<std::uint64_t>(e) << 2) | static_cast<std::uint64_t>(i);
    if (auto it = diff_memo_.find(key); it != diff_memo_.end()) {
        return it->second;
    }
    const Node n = node(e);
    Id d = zero_;
    switch (n.op) {
    case Op::Const: d = zero_; break;
    case Op::Var: d = n.n == i ? one_ : zero_; break;
    case Op::Add: d = add(diff(n.a, i), diff(n.b, i)); break;
    case Op::Mul: d = add(mul(diff(n.a, i), n.b), mul(n.a, diff(n.b, i))); break;
    case Op::Sin: d = mul(cos(n.a), diff(n.a, i)); break;
    case Op::Cos: d = neg(mul(sin(n.a), diff(n.a, i))); break;
    case Op::Pow: d = mul(mul(constant(n.n), pow(n.a, n.n - 1)), diff(n.a, i)); break;
    }
    diff_memo_.emplace(key, d);
    return d;
}

double Pool::evaluate(Id e, const Vec3& x) const
{
    Tape t(*this, {e});
    double out = 0.0;
    t.evaluate(x, &out);
    return out;
}

Tape::Tape(const Pool& pool, const std::vector<Id>& roots)
{
    // Children have smaller ids than parents, so marking then scanning ascending is a valid order.
    Id top = -1;
    for (Id r : roots) {
        top = std::max(top, r);
    }
    std::vector<char> needed(static_cast<std::size_t>(top + 1), 0);
    for (Id r : roots) {
        needed[static_cast<std::size_t>(r)] = 1;
    }
    for (Id id = top; id >= 0; --id) {
        if (!needed[static_cast<std::size_t>(id)]) {
            continue;
        }
        const Node& n = pool.node(id);
        if (n.a >= 0) {
            needed[static_cast<std::size_t>(n.a)] = 1;
        }
        if (n.b >= 0) {
            needed[static_cast<std::size_t>(n.b)] = 1;
        }
    }
    std::vector<int> slot(static_cast<std::size_t>(top + 1), -1);
    for (Id id = 0; id <= top; ++id) {
        if (!needed[static_cast<std::size_t>(id)]) {
            continue;
        }
        const Node& n = pool.node(id);
        Instr ins{n.op, n.a >= 0 ? slot[static_cast<std::size_t>(n.a)] : -1, n.b >= 0 ? slot[static_cast<std::size_t>(n.b)] : -1,
                  n.n, n.value};
        slot[static_cast<std::size_t>(id)] = static_cast<int>(code_.size());
        code_.push_back(ins);
    }
    for (Id r : roots) {
        roots_.push_back(slot[static_cast<std::size_t>(r)]);
    }
}

void Tape::evaluate(const Vec3& x, double* out) const
{
    thread_local std::vector<double> reg;
    reg.resize(code_.size());
    for (std::size_t k = 0; k < code_.size(); ++k) {
        const Instr& c = code_[k];
        double v = 0.0;
        switch (c.op) {
        case Op::Const: v = c.value; break;
        case Op::Var: v = x[c.n]; break;
        case Op::Add: v = reg[static_cast<std::size_t>(c.a)] + reg[static_cast<std::size_t>(c.b)]; break;
        case Op::Mul: v = reg[static_cast<std::size_t>(c.a)] * reg[static_cast<std::size_t>(c.b)]; break;
        case Op::Sin: v = std::sin(reg[static_cast<std::size_t>(c.a)]); break;
        case Op::Cos: v = std::cos(reg[static_cast<std::size_t>(c.a)]); break;
        case Op::Pow: {
            const double base = reg[static_cast<std::size_t>(c.a)];
            v = base;
            for (int p = 1; p < c.n; ++p) {
                v *= base;
            }
            break;
        }
        }
        reg[k] = v;
    }
    for (std::size_t r = 0; r < roots_.size(); ++r) {
        out[r] = reg[static_cast<std::size_t>(roots_[r])];
    }
}

Vec3Expr curl(Pool& p, const Vec3Expr& u)
{
    return {p.sub(p.diff(u[2], 1), p.diff(u[1], 2)), p.sub(p.diff(u[0], 2), p.diff(u[2], 0)),
            p.sub(p.diff(u[1], 0), p.diff(u[0], 1))};
}

Vec3Expr example1_field(Pool& p)
{
    const Id pi = p.constant(std::numbers::pi);
    std::array<Id, 3> s{};
    std::array<Id, 3> c{};
    for (int i = 0; i < 3; ++i) {
        const Id arg = p.mul(pi, p.var(i));
        s[static_cast<std::size_t>(i)] = p.sin(arg);
        c[static_cast<std::size_t>(i)] = p.cos(arg);
    }
    const Id k = p.constant(3.0 * std::numbers::pi);
    const Id u2 = p.mul(k, p.mul(p.mul(p.pow(s[0], 3), p.pow(s[1], 3)), p.mul(p.pow(s[2], 2), c[2])));
    const Id u3 = p.neg(p.mul(k, p.mul(p.mul(p.pow(s[0], 3), p.pow(s[2], 3)), p.mul(p.pow(s[1], 2), c[1]))));
    return {p.constant(0.0), u2, u3};
}

Vec3Expr polynomial_field(Pool& p, const VectorPolynomial<double>& poly)
{
    Vec3Expr out{};
    for (std::size_t comp = 0; comp < 3; ++comp) {
        const auto& q = poly.comp[comp];
        const auto& table = monomial_table<3>(q.degree_bound());
        Id sum = p.constant(0.0);
        for (std::size_t i = 0; i < q.size(); ++i) {
            if (q[i] == 0.0) {
                continue;
            }
            Id term = p.constant(q[i]);
            for (int v = 0; v < 3; ++v) {
                term = p.mul(term, p.pow(p.var(v), table[i][static_cast<std::size_t>(v)]));
            }
            sum = p.add(sum, term);
        }
        out[comp] = sum;
    }
    return out;
}

SymbolicField::SymbolicField(std::shared_ptr<Pool> pool, const Vec3Expr& u) : pool_(std::move(pool)), u_(u)
{
    Pool& p = *pool_;
    c_ = sym::curl(p, u_);
    cc_ = sym::curl(p, c_);
    const Vec3Expr c4 = sym::curl(p, sym::curl(p, cc_));
    for (std::size_t i = 0; i < 3; ++i) {
        f_[i] = p.add(c4[i], u_[i]);
    }
    std::vector<Id> jac;
    std::vector<Id> hess;
    for (std::size_t i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            jac.push_back(p.diff(c_[i], j));
        }
    }
    for (std::size_t i = 0; i < 3; ++i) {
        for (int o = 0; o < 3; ++o) {
            for (int s = 0; s < 3; ++s) {
                hess.push_back(p.diff(p.diff(c_[i], o), s));
            }
        }
    }
    const Id div = p.add(p.add(jac[0], jac[4]), jac[8]);
    tu_ = Tape(p, {u_.begin(), u_.end()});
    tc_ = Tape(p, {c_.begin(), c_.end()});
    tj_ = Tape(p, jac);
    th_ = Tape(p, hess);
    tcc_ = Tape(p, {cc_.begin(), cc_.end()});
    tf_ = Tape(p, {f_.begin(), f_.end()});
    tdiv_ = Tape(p, {div});
}

Vec3 SymbolicField::eval3(const Tape& t, const Vec3& x) const
{
    std::array<double, 3> v{};
    t.evaluate(x, v.data());
    return {v[0], v[1], v[2]};
}

Vec3 SymbolicField::value(const Vec3& x) const { return eval3(tu_, x); }
Vec3 SymbolicField::curl(const Vec3& x) const { return eval3(tc_, x); }
Vec3 SymbolicField::curl_curl(const Vec3& x) const { return eval3(tcc_, x); }
Vec3 SymbolicField::source(const Vec3& x) const { return eval3(tf_, x); }

Mat3 SymbolicField::curl_jacobian(const Vec3& x) const
{
    std::array<double, 9> v{};
    tj_.evaluate(x, v.data());
    Mat3 J;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            J(i, j) = v[static_cast<std::size_t>(3 * i + j)];
        }
    }
    return J;
}

std::array<Mat3, 3> SymbolicField::curl_hessian(const Vec3& x) const
{
    std::array<double, 27> v{};
    th_.evaluate(x, v.data());
    std::array<Mat3, 3> H;
    for (int i = 0; i < 3; ++i) {
        for (int o = 0; o < 3; ++o) {
            for (int s = 0; s < 3; ++s) {
                H[static_cast<std::size_t>(i)](o, s) = v[static_cast<std::size_t>(9 * i + 3 * o + s)];
            }
        }
    }
    return H;
}

double SymbolicField::div_curl(const Vec3& x) const
{
    double v = 0.0;
    tdiv_.evaluate(x, &v);
    return v;
}

std::function<Vec3(const Vec3&)> manufactured_rhs(const std::shared_ptr<const SymbolicField>& u)
{
    return [u](const Vec3& x) { return u->source(x); };
}

double max_div_curl(const SymbolicField& u, const std::vector<Vec3>& points)
{
    double m = 0.0;
    for (const auto& x : points) {
        m = std::max(m, std::abs(u.div_curl(x)));
    }
    return m;
}

}  // namespace quadcurl::sym
