#include "frevival/cospectrality.hpp"

#include <algorithm>
#include <cmath>

#include "frevival/errors.hpp"
#include "frevival/rational.hpp"

namespace frevival {

namespace {

void check_pair(const SpectralDecomposition& s, int a, int b) {
    if (a < 0 || a >= s.n || b < 0 || b >= s.n)
        fail("cospectrality/VertexOutOfRange", "pair (" + std::to_string(a) + "," + std::to_string(b) + ")");
    if (a == b) fail("cospectrality/BadParameter", "pair vertices must be distinct");
}

// Shared eigenvector directions of a set of commuting symmetric 2x2 matrices,
// taken from the restriction with the largest off-diagonal entry. Returns
// (p, q) with p, q > 0, p^2 + q^2 = 1, or nothing when all are diagonal.
std::optional<std::pair<double, double>> recover_pq(const std::vector<Eigen::Matrix2d>& rest,
                                                    double tol) {
    int best = -1;
    double best_off = tol;
    for (std::size_t r = 0; r < rest.size(); ++r)
        if (std::abs(rest[r](0, 1)) > best_off) {
            best_off = std::abs(rest[r](0, 1));
            best = static_cast<int>(r);
        }
    if (best < 0) return std::nullopt;

    const Eigen::Matrix2d& m = rest[best];
    const double angle = 0.5 * std::atan2(2.0 * m(0, 1), m(0, 0) - m(1, 1));
    double p = std::cos(angle), q = std::sin(angle);
    if (p * q < 0) {  // switch to the other eigenvector, whose components agree in sign
        const double tmp = p;
        p = -q;
        q = tmp;
    }
    if (q < 0) {
        p = -p;
        q = -q;
    }
    return std::make_pair(std::abs(p), std::abs(q));
}

}  // namespace

std::vector<Eigen::Matrix2d> restricted_idempotents(const SpectralDecomposition& s, int a, int b) {
    check_pair(s, a, b);
    std::vector<Eigen::Matrix2d> out;
    out.reserve(s.d() + 1);
    for (const auto& e : s.idempotents) {
        Eigen::Matrix2d m;
        m << e(a, a), e(a, b), e(a, b), e(b, b);
        out.push_back(m);
    }
    return out;
}

PairCospectralityReport fractional_cospectral(const SpectralDecomposition& s, int a, int b,
                                              double tol) {
    check_pair(s, a, b);
    PairCospectralityReport rep;
    rep.a = a;
    rep.b = b;

    const auto rest = restricted_idempotents(s, a, b);

    // Condition (i): the restrictions commute pairwise. The commutator of two
    // symmetric 2x2 matrices is antisymmetric, so one scalar decides it.
    double worst_commutator = 0.0;
    for (std::size_t j = 0; j < rest.size(); ++j)
        for (std::size_t h = j + 1; h < rest.size(); ++h) {
            const double x = rest[j](0, 1) * (rest[h](0, 0) - rest[h](1, 1)) -
                             rest[h](0, 1) * (rest[j](0, 0) - rest[j](1, 1));
            worst_commutator = std::max(worst_commutator, std::abs(x));
        }
    rep.per_condition["i"] = worst_commutator < tol;
    rep.fractionally_cospectral = rep.per_condition["i"];

    double cospectral_residual = 0.0;
    for (const auto& m : rest)
        cospectral_residual = std::max(cospectral_residual, std::abs(m(0, 0) - m(1, 1)));
    rep.cospectral = cospectral_residual < tol;

    const auto pq = recover_pq(rest, tol);
    if (!pq) {
        // Every restriction is diagonal, which a positively weighted connected
        // graph cannot produce but signed weights can (all walk sums between a
        // and b cancel). (p, q) are undefined; the (p, q)-parameterized
        // conditions degenerate to plain cospectrality.
        rep.no_nondiagonal_restriction = true;
        rep.per_condition["iii"] = rep.cospectral;
        rep.per_condition["viii"] = rep.cospectral;
        rep.notes.push_back("all restricted idempotents are diagonal; (p, q) undefined");
        return rep;
    }
    rep.p = pq->first;
    rep.q = pq->second;
    rep.ratio_plus = *rep.p / *rep.q;
    rep.ratio_minus = -*rep.q / *rep.p;
    const double c = *rep.ratio_plus + *rep.ratio_minus;  // p/q - q/p

    // Condition (iii): (E_r)_aa - (E_r)_bb = c (E_r)_ab for every r.
    double worst_iii = 0.0;
    for (const auto& m : rest)
        worst_iii = std::max(worst_iii, std::abs(m(0, 0) - m(1, 1) - c * m(0, 1)));
    rep.per_condition["iii"] = worst_iii < tol * (1.0 + std::abs(c));

    // Condition (viii): the modules generated by p e_a + q e_b and
    // -q e_a + p e_b are orthogonal, i.e. <E_r u, E_r v> = 0 for all r.
    double worst_viii = 0.0;
    for (const auto& m : rest) {
        const Eigen::Vector2d u(*rep.p, *rep.q), v(-*rep.q, *rep.p);
        worst_viii = std::max(worst_viii, std::abs(u.dot(m * v)));
    }
    rep.per_condition["viii"] = worst_viii < tol;

    if (rep.fractionally_cospectral && rep.cospectral) {
        // p = +-q specialization; the recovered values must sit at 1/sqrt(2).
        if (std::abs(*rep.p - *rep.q) > 10.0 * tol)
            rep.notes.push_back("cospectral pair recovered with |p| != |q|; tolerance trouble");
    }
    return rep;
}

namespace {

struct WalkTables {
    // entries[k] = ((A^k)_aa, (A^k)_bb, (A^k)_ab), scale[k] = max-abs overall
    std::vector<std::array<double, 3>> entries;
    std::vector<double> scale;
};

WalkTables walk_tables(const Eigen::MatrixXd& a_mat, int a, int b, int k_max) {
    WalkTables t;
    const int n = static_cast<int>(a_mat.rows());
    Eigen::VectorXd va = Eigen::VectorXd::Unit(n, a);
    Eigen::VectorXd vb = Eigen::VectorXd::Unit(n, b);
    for (int k = 0; k <= k_max; ++k) {
        t.entries.push_back({va(a), vb(b), va(b)});
        t.scale.push_back(std::max(1.0, std::max(va.cwiseAbs().maxCoeff(), vb.cwiseAbs().maxCoeff())));
        if (k < k_max) {
            va = a_mat * va;
            vb = a_mat * vb;
        }
    }
    return t;
}

std::vector<std::array<BigInt, 3>> walk_tables_exact(const WeightedGraph& g, int a, int b,
                                                     int k_max) {
    const int n = g.n;
    std::vector<std::vector<BigInt>> mat(n, std::vector<BigInt>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            mat[i][j] = BigInt(static_cast<std::int64_t>(std::llround(g.weights(i, j))));

    std::vector<BigInt> va(n), vb(n);
    va[a] = BigInt(1);
    vb[b] = BigInt(1);
    std::vector<std::array<BigInt, 3>> out;
    for (int k = 0; k <= k_max; ++k) {
        out.push_back({va[a], vb[b], va[b]});
        if (k < k_max) {
            std::vector<BigInt> na(n), nb(n);
            for (int i = 0; i < n; ++i) {
                BigInt sa, sb;
                for (int j = 0; j < n; ++j) {
                    sa += mat[i][j] * va[j];
                    sb += mat[i][j] * vb[j];
                }
                na[i] = std::move(sa);
                nb[i] = std::move(sb);
            }
            va = std::move(na);
            vb = std::move(nb);
        }
    }
    return out;
}

// p/q as an exact fraction when it reconstructs cleanly. The cap stays small:
// a genuinely rational eigenvector ratio on a desk-scale graph has a modest
// denominator, while irrational ratios admit spurious approximants with huge
// denominators under any loose residual cut.
std::optional<Fraction> rational_ratio(double p, double q) {
    const Reconstruction rec = reconstruct_rational(p / q, 10000);
    if (rec.residual < 1e-11 * (1.0 + std::abs(p / q)) && rec.value.num != 0) return rec.value;
    return std::nullopt;
}

}  // namespace

WalkConditionResult walk_condition(const WeightedGraph& g, int a, int b, double p, double q,
                                   int k_max) {
    if (k_max < 0) k_max = 2 * g.n;
    if (k_max < 2 * g.n - 1)
        fail("cospectrality/BadParameter", "k_max must be at least 2n-1");

    WalkConditionResult out;
    const double c = p / q - q / p;
    const auto ratio = g.integer_weighted ? rational_ratio(p, q) : std::nullopt;

    if (ratio) {
        const BigInt u(ratio->num), v(ratio->den);
        const BigInt lhs_factor = u * v;
        const BigInt rhs_factor = u * u - v * v;
        const auto tables = walk_tables_exact(g, a, b, k_max);
        out.power_identity = true;
        for (const auto& e : tables)
            if (!(lhs_factor * (e[0] - e[1]) == rhs_factor * e[2])) {
                out.power_identity = false;
                break;
            }
        // Walk-matrix Gram form uses the same moments up to 2n-2.
        out.walk_matrix_identity = true;
        for (int j = 0; j < g.n && out.walk_matrix_identity; ++j)
            for (int h = 0; h < g.n; ++h) {
                const auto& e = tables[j + h];
                if (!(lhs_factor * (e[0] - e[1]) == rhs_factor * e[2])) {
                    out.walk_matrix_identity = false;
                    break;
                }
            }
        return out;
    }

    const double tol = 1e-9;
    const auto tables = walk_tables(g.weights, a, b, k_max);
    out.power_identity = true;
    for (int k = 0; k <= k_max; ++k) {
        const auto& e = tables.entries[k];
        if (std::abs(e[0] - e[1] - c * e[2]) > tol * tables.scale[k] * (1.0 + std::abs(c))) {
            out.power_identity = false;
            break;
        }
    }
    out.walk_matrix_identity = true;
    for (int j = 0; j < g.n && out.walk_matrix_identity; ++j)
        for (int h = 0; h < g.n; ++h) {
            const auto& e = tables.entries[j + h];
            if (std::abs(e[0] - e[1] - c * e[2]) >
                tol * tables.scale[j + h] * (1.0 + std::abs(c))) {
                out.walk_matrix_identity = false;
                break;
            }
        }
    return out;
}

namespace {

struct NumericPoly {
    std::vector<double> coeffs;  // ascending

    int degree(double tol) const {
        for (std::size_t i = coeffs.size(); i-- > 0;)
            if (std::abs(coeffs[i]) > tol) return static_cast<int>(i);
        return -1;
    }
};

NumericPoly numeric_sub(const NumericPoly& a, const NumericPoly& b) {
    NumericPoly out;
    out.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()), 0.0);
    for (std::size_t i = 0; i < out.coeffs.size(); ++i) {
        if (i < a.coeffs.size()) out.coeffs[i] += a.coeffs[i];
        if (i < b.coeffs.size()) out.coeffs[i] -= b.coeffs[i];
    }
    return out;
}

NumericPoly numeric_mul(const NumericPoly& a, const NumericPoly& b) {
    NumericPoly out;
    if (a.coeffs.empty() || b.coeffs.empty()) return out;
    out.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs.size(); ++j)
            out.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
    return out;
}

std::optional<NumericPoly> numeric_sqrt(const NumericPoly& r, double tol) {
    const int deg = r.degree(tol);
    if (deg < 0) return NumericPoly{};
    if (deg % 2 != 0 || r.coeffs[deg] < 0) return std::nullopt;
    const int m = deg / 2;
    NumericPoly s;
    s.coeffs.assign(m + 1, 0.0);
    s.coeffs[m] = std::sqrt(r.coeffs[deg]);
    for (int k = m - 1; k >= 0; --k) {
        double acc = k + m < static_cast<int>(r.coeffs.size()) ? r.coeffs[m + k] : 0.0;
        for (int i = k + 1; i <= m - 1; ++i) acc -= s.coeffs[i] * s.coeffs[m + k - i];
        s.coeffs[k] = acc / (2.0 * s.coeffs[m]);
    }
    const NumericPoly check = numeric_sub(numeric_mul(s, s), r);
    for (double cc : check.coeffs)
        if (std::abs(cc) > tol) return std::nullopt;
    return s;
}

struct CharPolySet {
    bool exact = false;
    IntPoly phi, phi_a, phi_b, phi_ab;
    NumericPoly nphi, nphi_a, nphi_b, nphi_ab;
};

CharPolySet char_poly_set(const WeightedGraph& g, int a, int b) {
    CharPolySet set;
    if (g.integer_weighted) {
        set.exact = true;
        set.phi = char_poly_exact(g);
        set.phi_a = char_poly_exact_deleted(g, {a});
        set.phi_b = char_poly_exact_deleted(g, {b});
        set.phi_ab = char_poly_exact_deleted(g, {a, b});
    } else {
        auto deleted = [&](std::vector<int> rem) {
            return NumericPoly{char_poly_numeric(delete_vertices(g, std::move(rem)).weights)};
        };
        set.nphi = NumericPoly{char_poly_numeric(g.weights)};
        set.nphi_a = deleted({a});
        set.nphi_b = deleted({b});
        set.nphi_ab = deleted({a, b});
    }
    return set;
}

double numeric_max_abs(const NumericPoly& p) {
    double m = 0.0;
    for (double c : p.coeffs) m = std::max(m, std::abs(c));
    return m;
}

}  // namespace

bool charpoly_condition(const WeightedGraph& g, int a, int b, double p, double q, double tol) {
    if (a < 0 || a >= g.n || b < 0 || b >= g.n || a == b)
        fail("cospectrality/VertexOutOfRange", "invalid pair");
    const double c = p / q - q / p;
    const CharPolySet set = char_poly_set(g, a, b);

    if (set.exact) {
        const IntPoly lhs = poly_sub(set.phi_a, set.phi_b);
        const IntPoly radicand = poly_sub(poly_mul(set.phi_a, set.phi_b), poly_mul(set.phi, set.phi_ab));
        if (radicand.is_zero()) return lhs.is_zero();
        const auto root = poly_sqrt(radicand);
        if (!root)
            fail("cospectrality/RadicandNotPerfectSquare",
                 "phi(X\\a)phi(X\\b) - phi(X)phi(X\\ab) is not a polynomial square");

        const auto ratio = rational_ratio(p, q);
        if (ratio) {
            const BigInt u(ratio->num), v(ratio->den);
            const BigInt lf = u * v, rf = u * u - v * v;
            for (int sign = -1; sign <= 1; sign += 2) {
                const IntPoly rhs = poly_scale(*root, sign < 0 ? -rf : rf);
                if (poly_sub(poly_scale(lhs, lf), rhs).is_zero()) return true;
            }
            return false;
        }
        // Irrational p/q: compare coefficients numerically.
        const auto dl = poly_to_double(lhs);
        const auto dr = poly_to_double(*root);
        double scale = 1.0;
        for (double x : dr) scale = std::max(scale, std::abs(x));
        for (int sign = -1; sign <= 1; sign += 2) {
            bool ok = true;
            for (std::size_t i = 0; i < std::max(dl.size(), dr.size()); ++i) {
                const double l = i < dl.size() ? dl[i] : 0.0;
                const double r = i < dr.size() ? dr[i] : 0.0;
                if (std::abs(l - sign * c * r) > tol * scale * (1.0 + std::abs(c))) {
                    ok = false;
                    break;
                }
            }
            if (ok) return true;
        }
        return false;
    }

    const NumericPoly lhs = numeric_sub(set.nphi_a, set.nphi_b);
    const NumericPoly radicand =
        numeric_sub(numeric_mul(set.nphi_a, set.nphi_b), numeric_mul(set.nphi, set.nphi_ab));
    const double scale = std::max(1.0, numeric_max_abs(radicand));
    const auto root = numeric_sqrt(radicand, tol * scale);
    if (!root)
        fail("cospectrality/RadicandNotPerfectSquare",
             "numeric radicand is not a polynomial square at the working tolerance");
    for (int sign = -1; sign <= 1; sign += 2) {
        bool ok = true;
        for (std::size_t i = 0; i < std::max(lhs.coeffs.size(), root->coeffs.size()); ++i) {
            const double l = i < lhs.coeffs.size() ? lhs.coeffs[i] : 0.0;
            const double r = i < root->coeffs.size() ? root->coeffs[i] : 0.0;
            if (std::abs(l - sign * c * r) > tol * scale * (1.0 + std::abs(c))) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    }
    return false;
}

bool parallel_vertices(const SpectralDecomposition& s, int a, int b, double tol) {
    if (a < 0 || a >= s.n || b < 0 || b >= s.n)
        fail("cospectrality/VertexOutOfRange", "pair (" + std::to_string(a) + "," + std::to_string(b) + ")");
    if (a == b) return true;
    for (const auto& e : s.idempotents) {
        const Eigen::VectorXd u = e.col(a);
        const Eigen::VectorXd v = e.col(b);
        const double nu = u.norm(), nv = v.norm();
        const bool za = nu < tol, zb = nv < tol;
        if (za && zb) continue;
        if (za != zb) return false;
        const double gram = nu * nu * nv * nv - u.dot(v) * u.dot(v);
        if (gram >= tol * tol) return false;
    }
    return true;
}

PairCospectralityReport strongly_fractionally_cospectral(const SpectralDecomposition& s, int a,
                                                         int b, double tol) {
    PairCospectralityReport rep = fractional_cospectral(s, a, b, tol);
    rep.parallel = parallel_vertices(s, a, b, tol);
    if (!rep.fractionally_cospectral || !rep.parallel || !rep.p) return rep;

    const double rplus = *rep.ratio_plus;
    const double rminus = *rep.ratio_minus;
    for (int r = 0; r <= s.d(); ++r) {
        const Eigen::VectorXd u = s.idempotents[r].col(a);
        const Eigen::VectorXd v = s.idempotents[r].col(b);
        if (u.norm() < tol && v.norm() < tol) {
            rep.class_zero.push_back(r);
            continue;
        }
        const double res_plus = (u - rplus * v).norm();
        const double res_minus = (u - rminus * v).norm();
        const double scale = std::max(1.0, std::max(u.norm(), v.norm()));
        if (res_plus < tol * scale * (1.0 + std::abs(rplus)) && res_plus <= res_minus)
            rep.class_plus.push_back(r);
        else if (res_minus < tol * scale * (1.0 + std::abs(rminus)))
            rep.class_minus.push_back(r);
        else
            fail("cospectrality/InconsistentClassSplit",
                 "idempotent " + std::to_string(r) + " fits neither ratio class");
    }

    rep.strongly_fractionally_cospectral =
        !rep.class_plus.empty() && !rep.class_minus.empty();
    if (!rep.strongly_fractionally_cospectral) return rep;

    // Cross-validate against the minimal commuting partition for K = {a, b}:
    // its two nonzero restrictions must carve out exactly C_1 and C_2.
    const auto k = subset_projector({a, b}, s.n);
    const ClassIdempotents ci = min_commuting_partition(s, k, default_zero_tol(s.n));
    std::vector<std::vector<int>> nonzero_classes;
    for (std::size_t j = 0; j < ci.partition.classes.size(); ++j)
        if (ci.nonzero_restriction[j]) nonzero_classes.push_back(ci.partition.classes[j]);
    auto matches = [](const std::vector<int>& x, const std::vector<int>& y) { return x == y; };
    bool consistent = nonzero_classes.size() == 2 &&
                      ((matches(nonzero_classes[0], rep.class_plus) &&
                        matches(nonzero_classes[1], rep.class_minus)) ||
                       (matches(nonzero_classes[0], rep.class_minus) &&
                        matches(nonzero_classes[1], rep.class_plus)));
    if (!consistent)
        fail("cospectrality/InconsistentClassSplit",
             "ratio class split disagrees with the minimal commuting partition");
    return rep;
}

bool simple_poles_check(const WeightedGraph& g, int a, int b) {
    if (!g.integer_weighted)
        fail("cospectrality/NotIntegerWeighted", "simple_poles_check needs integer weights");
    const IntPoly phi = char_poly_exact(g);
    const IntPoly phi_ab = char_poly_exact_deleted(g, {a, b});
    if (phi_ab.is_zero()) return poly_squarefree(phi);
    const IntPoly common = poly_gcd(phi, phi_ab);
    const IntPoly denominator =
        common.degree() == 0 ? poly_primitive_part(phi) : poly_quotient_primitive(phi, common);
    return poly_squarefree(denominator);
}

std::optional<double> solve_ratio_from_idempotents(const SpectralDecomposition& s, int a, int b,
                                                   double tol) {
    const auto rest = restricted_idempotents(s, a, b);
    int best = -1;
    double best_off = tol;
    for (std::size_t r = 0; r < rest.size(); ++r)
        if (std::abs(rest[r](0, 1)) > best_off) {
            best_off = std::abs(rest[r](0, 1));
            best = static_cast<int>(r);
        }
    if (best < 0) {
        // All off-diagonal entries vanish: the identity collapses to plain
        // cospectrality, satisfied by any ratio (0 is the canonical choice).
        for (const auto& m : rest)
            if (std::abs(m(0, 0) - m(1, 1)) > tol) return std::nullopt;
        return 0.0;
    }
    const double c = (rest[best](0, 0) - rest[best](1, 1)) / rest[best](0, 1);
    for (const auto& m : rest)
        if (std::abs(m(0, 0) - m(1, 1) - c * m(0, 1)) > tol * (1.0 + std::abs(c)))
            return std::nullopt;
    return c;
}

std::optional<double> solve_ratio_from_walks(const WeightedGraph& g, int a, int b, int k_max,
                                             double tol) {
    if (k_max < 0) k_max = 2 * g.n;
    const auto tables = walk_tables(g.weights, a, b, k_max);
    int best = -1;
    double best_rel = tol;
    for (int k = 0; k <= k_max; ++k) {
        const double rel = std::abs(tables.entries[k][2]) / tables.scale[k];
        if (rel > best_rel) {
            best_rel = rel;
            best = k;
        }
    }
    if (best < 0) {
        for (int k = 0; k <= k_max; ++k)
            if (std::abs(tables.entries[k][0] - tables.entries[k][1]) > tol * tables.scale[k])
                return std::nullopt;
        return 0.0;
    }
    const auto& e0 = tables.entries[best];
    const double c = (e0[0] - e0[1]) / e0[2];
    for (int k = 0; k <= k_max; ++k) {
        const auto& e = tables.entries[k];
        if (std::abs(e[0] - e[1] - c * e[2]) > tol * tables.scale[k] * (1.0 + std::abs(c)))
            return std::nullopt;
    }
    return c;
}

std::optional<double> solve_ratio_from_charpoly(const WeightedGraph& g, int a, int b, double tol) {
    const CharPolySet set = char_poly_set(g, a, b);
    if (set.exact) {
        const IntPoly lhs = poly_sub(set.phi_a, set.phi_b);
        const IntPoly radicand =
            poly_sub(poly_mul(set.phi_a, set.phi_b), poly_mul(set.phi, set.phi_ab));
        if (radicand.is_zero()) return lhs.is_zero() ? std::optional<double>(0.0) : std::nullopt;
        const auto root = poly_sqrt(radicand);
        if (!root)
            fail("cospectrality/RadicandNotPerfectSquare",
                 "phi(X\\a)phi(X\\b) - phi(X)phi(X\\ab) is not a polynomial square");
        if (lhs.is_zero()) return 0.0;

        // Exact proportionality of lhs and the root.
        const auto& sc = root->coeffs;
        const auto& lc = lhs.coeffs;
        const std::size_t len = std::max(sc.size(), lc.size());
        auto at = [](const std::vector<BigInt>& v, std::size_t i) {
            return i < v.size() ? v[i] : BigInt();
        };
        for (std::size_t i = 0; i < len; ++i)
            for (std::size_t j = i + 1; j < len; ++j)
                if (!(at(lc, i) * at(sc, j) == at(lc, j) * at(sc, i))) return std::nullopt;
        std::size_t pivot = 0;
        for (std::size_t i = 0; i < sc.size(); ++i)
            if (BigInt::abs(sc[i]) > BigInt::abs(sc[pivot])) pivot = i;
        if (sc[pivot].is_zero()) return std::nullopt;
        return at(lc, pivot).to_double() / sc[pivot].to_double();
    }

    const NumericPoly lhs = numeric_sub(set.nphi_a, set.nphi_b);
    const NumericPoly radicand =
        numeric_sub(numeric_mul(set.nphi_a, set.nphi_b), numeric_mul(set.nphi, set.nphi_ab));
    const double scale = std::max(1.0, numeric_max_abs(radicand));
    const auto root = numeric_sqrt(radicand, tol * scale);
    if (!root) return std::nullopt;
    const double lscale = std::max(1.0, numeric_max_abs(lhs));
    if (numeric_max_abs(lhs) < tol * lscale) return 0.0;
    std::size_t pivot = 0;
    for (std::size_t i = 0; i < root->coeffs.size(); ++i)
        if (std::abs(root->coeffs[i]) > std::abs(root->coeffs[pivot])) pivot = i;
    if (std::abs(root->coeffs[pivot]) < tol * scale) return std::nullopt;
    const double c = (pivot < lhs.coeffs.size() ? lhs.coeffs[pivot] : 0.0) / root->coeffs[pivot];
    for (std::size_t i = 0; i < std::max(lhs.coeffs.size(), root->coeffs.size()); ++i) {
        const double l = i < lhs.coeffs.size() ? lhs.coeffs[i] : 0.0;
        const double r = i < root->coeffs.size() ? root->coeffs[i] : 0.0;
        if (std::abs(l - c * r) > tol * std::max(scale, lscale) * (1.0 + std::abs(c)))
            return std::nullopt;
    }
    return c;
}

std::pair<double, double> pq_from_ratio(double c) {
    const double t = 0.5 * (c + std::sqrt(c * c + 4.0));  // positive root of t - 1/t = c
    const double q = 1.0 / std::sqrt(1.0 + t * t);
    return {t * q, q};
}

PairCospectralityReport pair_report(const WeightedGraph& g, const SpectralDecomposition& s,
                                    int a, int b, double tol) {
    if (!is_connected(g)) fail("cospectrality/DisconnectedGraph", "graph is not connected");
    PairCospectralityReport rep = strongly_fractionally_cospectral(s, a, b, tol);
    if (rep.p) {
        const auto wc = walk_condition(g, a, b, *rep.p, *rep.q);
        rep.per_condition["iv"] = wc.power_identity;
        rep.per_condition["vi"] = wc.walk_matrix_identity;
        rep.per_condition["vii"] = charpoly_condition(g, a, b, *rep.p, *rep.q);
    } else {
        const auto walk = solve_ratio_from_walks(g, a, b, -1, tol);
        const auto cp = solve_ratio_from_charpoly(g, a, b, tol);
        rep.per_condition["iv"] = walk.has_value();
        rep.per_condition["vi"] = walk.has_value();
        rep.per_condition["vii"] = cp.has_value();
    }
    return rep;
}

}  // namespace frevival
