#include "combnet/lp.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

#include "combnet/errors.hpp"

namespace combnet {

int LinearProgram::add_var(std::string name, bool nonneg) {
    vars.push_back({std::move(name), nonneg});
    objective.emplace_back(0);
    return static_cast<int>(vars.size()) - 1;
}

int LinearProgram::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < vars.size(); ++i)
        if (vars[i].name == name) return static_cast<int>(i);
    return -1;
}

const char* status_str(LpStatus s) {
    switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    }
    return "?";
}

namespace {

std::string subset_name(char prefix, std::uint64_t bits) {
    std::string s(1, prefix);
    s += '[';
    bool first = true;
    for (std::uint64_t b = bits; b; b &= b - 1) {
        if (!first) s += ',';
        s += std::to_string(std::countr_zero(b) + 1);
        first = false;
    }
    return s + "]";
}

// Canonical form: min c.z, A z >= b, z >= 0 with integer data. Free variables are split.
struct CanonRow {
    std::vector<mpz_class> a;
    mpz_class b;
    std::size_t orig;
    Rational mult; // canonical row = mult * original row
};

struct Canonical {
    int ncols = 0;
    std::vector<std::pair<int, int>> colVar; // (variable, +1 or -1)
    std::vector<mpz_class> c;
    Rational cscale = 1; // c_int = cscale * c
    std::vector<CanonRow> rows;
};

CanonRow integerize(std::vector<Rational> a, Rational b, std::size_t orig, int sign) {
    mpz_class L = b.get_den();
    for (const auto& q : a) L = lcm(L, q.get_den());
    CanonRow row;
    row.orig = orig;
    row.a.resize(a.size());
    mpz_class g = 0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        row.a[j] = sign * Rational(a[j] * L).get_num();
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), row.a[j].get_mpz_t());
    }
    row.b = sign * Rational(b * L).get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), row.b.get_mpz_t());
    if (g == 0) g = 1;
    for (auto& v : row.a) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(row.b.get_mpz_t(), row.b.get_mpz_t(), g.get_mpz_t());
    row.mult = Rational(mpz_class(sign * L), g);
    row.mult.canonicalize();
    return row;
}

Canonical canonicalize(const LinearProgram& lp) {
    Canonical cf;
    std::vector<int> plus(lp.vars.size()), minus(lp.vars.size(), -1);
    for (std::size_t j = 0; j < lp.vars.size(); ++j) {
        plus[j] = cf.ncols++;
        cf.colVar.emplace_back(static_cast<int>(j), 1);
        if (!lp.vars[j].nonneg) {
            minus[j] = cf.ncols++;
            cf.colVar.emplace_back(static_cast<int>(j), -1);
        }
    }
    mpz_class L = 1;
    for (const auto& q : lp.objective) L = lcm(L, q.get_den());
    cf.cscale = L;
    cf.c.resize(cf.ncols);
    for (std::size_t j = 0; j < lp.vars.size(); ++j) {
        mpz_class v = Rational(lp.objective[j] * L).get_num();
        cf.c[plus[j]] = v;
        if (minus[j] >= 0) cf.c[minus[j]] = -v;
    }
    for (std::size_t r = 0; r < lp.rows.size(); ++r) {
        const auto& row = lp.rows[r];
        std::vector<Rational> a(cf.ncols, Rational(0));
        for (const auto& [var, coef] : row.coeffs) {
            if (var < 0 || var >= static_cast<int>(lp.vars.size())) throw ParameterError("LP row references an undeclared variable");
            a[plus[var]] += coef;
            if (minus[var] >= 0) a[minus[var]] -= coef;
        }
        if (row.sense != Sense::LE) cf.rows.push_back(integerize(a, row.rhs, r, 1));
        if (row.sense != Sense::GE) cf.rows.push_back(integerize(a, row.rhs, r, -1));
    }
    return cf;
}

/// Drops duplicate rows and rows implied by another row with the same support
/// (a_j <= a_i entrywise and b_j >= b_i imply row i when z >= 0).
void presolve(Canonical& cf) {
    std::map<std::vector<int>, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < cf.rows.size(); ++i) {
        std::vector<int> support;
        for (int j = 0; j < cf.ncols; ++j)
            if (sgn(cf.rows[i].a[j]) != 0) support.push_back(j);
        groups[support].push_back(i);
    }
    std::vector<char> keep(cf.rows.size(), 0);
    auto implies = [&](const CanonRow& p, const CanonRow& q) {
        if (p.b < q.b) return false;
        for (int j = 0; j < cf.ncols; ++j)
            if (p.a[j] > q.a[j]) return false;
        return true;
    };
    for (auto& [support, ids] : groups) {
        std::vector<std::size_t> kept;
        for (auto i : ids) {
            bool redundant = false;
            for (auto k : kept)
                if (implies(cf.rows[k], cf.rows[i])) { redundant = true; break; }
            if (redundant) continue;
            kept.erase(std::remove_if(kept.begin(), kept.end(),
                                      [&](std::size_t k) { return implies(cf.rows[i], cf.rows[k]); }),
                       kept.end());
            kept.push_back(i);
        }
        for (auto k : kept) keep[k] = 1;
    }
    std::vector<CanonRow> out;
    for (std::size_t i = 0; i < cf.rows.size(); ++i)
        if (keep[i]) out.push_back(std::move(cf.rows[i]));
    cf.rows = std::move(out);
}

// Integer-preserving simplex tableau: the rational tableau is T / D, with basic columns equal to D * e_i.
// Row 0 holds D times the reduced costs of a maximisation; the last column is the right-hand side.
class Tableau {
public:
    Tableau(int rows, int cols) : nr_(rows), nc_(cols), t_(static_cast<std::size_t>(rows) * cols), basis_(rows, -1), D_(1) {}

    mpz_class& at(int i, int j) { return t_[static_cast<std::size_t>(i) * nc_ + j]; }
    const mpz_class& at(int i, int j) const { return t_[static_cast<std::size_t>(i) * nc_ + j]; }
    int rows() const { return nr_; }
    int cols() const { return nc_; }
    int rhs() const { return nc_ - 1; }
    const mpz_class& D() const { return D_; }
    int basis(int i) const { return basis_[i]; }
    void set_basis(int i, int col) { basis_[i] = col; }

    void negate_row(int r) {
        for (int j = 0; j < nc_; ++j) mpz_neg(at(r, j).get_mpz_t(), at(r, j).get_mpz_t());
    }

    void pivot(int r, int s) {
        mpz_class prs = at(r, s);
        mpz_class tmp;
        for (int i = 0; i < nr_; ++i) {
            if (i == r) continue;
            mpz_class tis = at(i, s);
            const bool zeroCol = sgn(tis) == 0;
            for (int j = 0; j < nc_; ++j) {
                mpz_class& x = at(i, j);
                const mpz_class& trj = at(r, j);
                if (zeroCol || sgn(trj) == 0) {
                    if (sgn(x) == 0) continue;
                    mpz_mul(tmp.get_mpz_t(), x.get_mpz_t(), prs.get_mpz_t());
                } else {
                    mpz_mul(tmp.get_mpz_t(), x.get_mpz_t(), prs.get_mpz_t());
                    mpz_submul(tmp.get_mpz_t(), tis.get_mpz_t(), trj.get_mpz_t());
                }
                mpz_divexact(x.get_mpz_t(), tmp.get_mpz_t(), D_.get_mpz_t());
            }
        }
        D_ = prs;
        basis_[r] = s;
    }

private:
    int nr_;
    int nc_;
    std::vector<mpz_class> t_;
    std::vector<int> basis_;
    mpz_class D_;
};

enum class RunStatus { Optimal, Unbounded };

struct Runner {
    Tableau& T;
    std::vector<char> banned;
    std::size_t stallLimit;
    std::size_t pivots = 0;
    bool bland = false;
    int unboundedCol = -1;

    RunStatus run() {
        std::vector<char> basic(T.cols(), 0);
        for (int i = 1; i < T.rows(); ++i) basic[T.basis(i)] = 1;
        std::size_t stall = 0;
        while (true) {
            int s = -1;
            for (int j = 0; j < T.rhs(); ++j) {
                if (banned[j] || basic[j] || sgn(T.at(0, j)) >= 0) continue;
                if (bland) { s = j; break; }
                if (s < 0 || T.at(0, j) < T.at(0, s)) s = j;
            }
            if (s < 0) return RunStatus::Optimal;
            int r = -1;
            for (int i = 1; i < T.rows(); ++i) {
                if (sgn(T.at(i, s)) <= 0) continue;
                if (r < 0) { r = i; continue; }
                // compare rhs_i / a_is against rhs_r / a_rs
                int cmp = cmp_ratio(T.at(i, T.rhs()), T.at(i, s), T.at(r, T.rhs()), T.at(r, s));
                if (cmp == 0 && !bland) cmp = lex_compare(i, r, s);
                if (cmp < 0 || (cmp == 0 && T.basis(i) < T.basis(r))) r = i;
            }
            if (r < 0) {
                unboundedCol = s;
                return RunStatus::Unbounded;
            }
            mpz_class oldObj = T.at(0, T.rhs()), oldD = T.D();
            basic[T.basis(r)] = 0;
            basic[s] = 1;
            T.pivot(r, s);
            ++pivots;
            // objective strictly improved iff new/D' > old/D
            if (T.at(0, T.rhs()) * oldD > oldObj * T.D())
                stall = 0;
            else if (++stall > stallLimit)
                bland = true;
        }
    }

    // Ties in the ratio test are broken by comparing the rows divided by their pivot entries,
    // starting with the columns of the starting basis.
    int lex_compare(int i, int r, int s) const {
        const int n = T.rows() - 1, m = T.cols() - 2 - n;
        auto order = [&](int k) { return k < n ? m + k : (k - n < m ? k - n : m + n); };
        for (int k = 0; k < T.rhs(); ++k) {
            const int j = order(k);
            if (int c = cmp_ratio(T.at(i, j), T.at(i, s), T.at(r, j), T.at(r, s))) return c;
        }
        return 0;
    }

    static int cmp_ratio(const mpz_class& a, const mpz_class& b, const mpz_class& c, const mpz_class& d) {
        mpz_class l = a * d, rr = c * b;
        return cmp(l, rr);
    }
};

Rational ratio(const mpz_class& a, const mpz_class& D) {
    Rational q(a, D);
    q.canonicalize();
    return q;
}

} // namespace

LinearProgram build_bound_lp(const BoundSystem& sys, int N, const Rational& M) {
    if (N < 1) throw ParameterError("N must be positive");
    if (M < 0 || M > N) throw ParameterError("M must lie in [0, N]");
    LinearProgram lp;
    // R >= 0 is implied by every bound row (positive R coefficient, nonnegative right side), so it is
    // declared nonnegative; this also makes an LP without bound rows return 0.
    const int R = lp.add_var("R", true);
    lp.objective[R] = 1;
    const std::uint64_t nsub = std::uint64_t{1} << sys.K;
    std::vector<int> xIndex(nsub);
    for (std::uint64_t w = 0; w < nsub; ++w) xIndex[w] = lp.add_var(subset_name('x', w), true);
    std::unordered_map<std::uint64_t, int> yIndex;
    for (auto Q : sys.yVars) yIndex[Q.bits()] = lp.add_var(subset_name('y', Q.bits()), false);

    for (const auto& b : sys.rows) {
        LpRow row;
        if (sgn(b.coeffR) != 0) row.coeffs.emplace_back(R, b.coeffR);
        for (const auto& [w, v] : b.coeffX) row.coeffs.emplace_back(xIndex.at(w), v);
        for (const auto& [q, v] : b.coeffY) {
            auto it = yIndex.find(q);
            if (it == yIndex.end()) throw ParameterError("bound row mentions an undeclared y variable");
            row.coeffs.emplace_back(it->second, v);
        }
        row.sense = b.sense;
        row.rhs = b.rhs;
        row.provenance = b.thm + ":" + b.provenance;
        lp.add_row(std::move(row));
    }
    LpRow norm;
    for (std::uint64_t w = 0; w < nsub; ++w) norm.coeffs.emplace_back(xIndex[w], 1);
    norm.sense = Sense::EQ;
    norm.rhs = 1;
    norm.provenance = "normalization";
    lp.add_row(std::move(norm));
    Rational frac = M / N;
    for (int i = 0; i < sys.K; ++i) {
        LpRow mem;
        for (std::uint64_t w = 0; w < nsub; ++w)
            if ((w >> i) & 1u) mem.coeffs.emplace_back(xIndex[w], 1);
        mem.sense = Sense::LE;
        mem.rhs = frac;
        mem.provenance = "memory:user=" + std::to_string(i + 1);
        lp.add_row(std::move(mem));
    }
    return lp;
}

LpResult solve_lp(const LinearProgram& lp, const LpOptions& opt) {
    if (lp.objective.size() != lp.vars.size()) throw ParameterError("objective length differs from variable count");
    Canonical cf = canonicalize(lp);
    if (opt.presolve) presolve(cf);

    // Dual: max b.u  s.t.  A^T u + s = c,  u, s >= 0. One tableau row per canonical column.
    const int m = static_cast<int>(cf.rows.size());
    const int n = cf.ncols;
    const int x0 = m + n;
    Tableau T(n + 1, m + n + 2);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < m; ++i) T.at(1 + j, i) = cf.rows[i].a[j];
        T.at(1 + j, m + j) = 1;
        T.at(1 + j, x0) = -1;
        T.at(1 + j, T.rhs()) = cf.c[j];
        T.set_basis(1 + j, m + j);
    }

    LpResult res;
    res.rowsUsed = cf.rows.size();
    Runner run{T, std::vector<char>(m + n + 1, 0), opt.stallLimit};

    auto primal_from_row0 = [&]() {
        std::vector<Rational> z(lp.vars.size(), Rational(0));
        for (int j = 0; j < n; ++j) {
            auto [var, sign] = cf.colVar[j];
            z[var] += sign * ratio(T.at(0, m + j), T.D());
        }
        return z;
    };

    // Phase 1 when the slack basis is infeasible (some c_j < 0).
    int worst = -1;
    for (int j = 0; j < n; ++j)
        if (sgn(cf.c[j]) < 0 && (worst < 0 || cf.c[j] < cf.c[worst])) worst = j;
    if (worst >= 0) {
        T.at(0, x0) = 1; // maximise -x0
        T.negate_row(1 + worst);
        T.pivot(1 + worst, x0);
        run.run();
        if (sgn(T.at(0, T.rhs())) < 0) {
            // The phase-1 multipliers give z >= 0 with A z >= 0 and c.z < 0.
            res.status = LpStatus::Unbounded;
            res.primal = primal_from_row0();
            res.pivots = run.pivots + 1;
            res.blandUsed = run.bland;
            return res;
        }
        for (int i = 1; i < T.rows(); ++i) {
            if (T.basis(i) != x0) continue;
            int s = -1;
            for (int j = 0; j < x0; ++j) {
                bool isBasic = false;
                for (int k = 1; k < T.rows(); ++k) isBasic |= T.basis(k) == j;
                if (!isBasic && sgn(T.at(i, j)) != 0) { s = j; break; }
            }
            if (s < 0) break; // redundant row: x0 stays basic at zero and never moves
            if (sgn(T.at(i, s)) < 0) T.negate_row(i);
            T.pivot(i, s);
            ++run.pivots;
        }
        // Phase-2 objective row: D * reduced costs of max b.u.
        for (int j = 0; j < T.cols(); ++j) T.at(0, j) = 0;
        for (int i = 0; i < m; ++i) T.at(0, i) = -T.D() * cf.rows[i].b;
        for (int r = 1; r < T.rows(); ++r) {
            int bcol = T.basis(r);
            if (bcol >= m) continue;
            const mpz_class& bb = cf.rows[bcol].b;
            if (sgn(bb) == 0) continue;
            for (int j = 0; j < T.cols(); ++j)
                if (sgn(T.at(r, j)) != 0) T.at(0, j) += bb * T.at(r, j);
        }
    } else {
        for (int i = 0; i < m; ++i) T.at(0, i) = -cf.rows[i].b;
    }
    run.banned[x0] = 1;

    auto status = run.run();
    res.pivots = run.pivots;
    res.blandUsed = run.bland;
    if (status == RunStatus::Unbounded) {
        // Dual ray: u_s grows, basic u's move by -T_is. Its u-part is a Farkas certificate.
        res.status = LpStatus::Infeasible;
        res.dual.assign(lp.rows.size(), Rational(0));
        const int s = run.unboundedCol;
        if (s < m) res.dual[cf.rows[s].orig] += cf.rows[s].mult;
        for (int i = 1; i < T.rows(); ++i) {
            int bcol = T.basis(i);
            if (bcol < m && sgn(T.at(i, s)) != 0)
                res.dual[cf.rows[bcol].orig] -= ratio(T.at(i, s), T.D()) * cf.rows[bcol].mult;
        }
        return res;
    }

    res.status = LpStatus::Optimal;
    res.optimum = ratio(T.at(0, T.rhs()), T.D()) / cf.cscale;
    res.primal = primal_from_row0();
    res.dual.assign(lp.rows.size(), Rational(0));
    for (int i = 1; i < T.rows(); ++i) {
        int bcol = T.basis(i);
        if (bcol < m) res.dual[cf.rows[bcol].orig] += ratio(T.at(i, T.rhs()), T.D()) * cf.rows[bcol].mult / cf.cscale;
    }

    // Independent exact check of the claimed optimum.
    Rational obj = 0;
    for (std::size_t j = 0; j < lp.vars.size(); ++j) obj += lp.objective[j] * res.primal[j];
    if (obj != res.optimum) throw std::logic_error("LP verification failed: objective mismatch");
    if (!check_feasible(lp, res.primal).feasible) throw std::logic_error("LP verification failed: witness infeasible");
    if (!check_dual_certificate(lp, res.dual, res.optimum))
        throw std::logic_error("LP verification failed: dual certificate rejected");
    return res;
}

FeasibilityReport check_feasible(const LinearProgram& lp, const std::vector<Rational>& z) {
    if (z.size() != lp.vars.size()) throw ParameterError("assignment length differs from variable count");
    FeasibilityReport rep;
    auto violate = [&](std::size_t idx, const std::string& prov) {
        rep.feasible = false;
        if (rep.violated.size() < 10) {
            rep.violated.push_back(idx);
            rep.provenance.push_back(prov);
        }
    };
    for (std::size_t j = 0; j < lp.vars.size(); ++j)
        if (lp.vars[j].nonneg && z[j] < 0) violate(lp.rows.size() + j, "nonneg:" + lp.vars[j].name);
    for (std::size_t r = 0; r < lp.rows.size(); ++r) {
        const auto& row = lp.rows[r];
        Rational lhs = 0;
        for (const auto& [var, coef] : row.coeffs) lhs += coef * z[var];
        bool ok = row.sense == Sense::GE ? lhs >= row.rhs : row.sense == Sense::LE ? lhs <= row.rhs : lhs == row.rhs;
        if (!ok) violate(r, row.provenance);
    }
    return rep;
}

bool check_dual_certificate(const LinearProgram& lp, const std::vector<Rational>& dual, const Rational& optimum) {
    if (dual.size() != lp.rows.size()) return false;
    std::vector<Rational> s(lp.vars.size(), Rational(0));
    Rational val = 0;
    for (std::size_t r = 0; r < lp.rows.size(); ++r) {
        const auto& row = lp.rows[r];
        const auto& l = dual[r];
        if (row.sense == Sense::GE && l < 0) return false;
        if (row.sense == Sense::LE && l > 0) return false;
        if (sgn(l) == 0) continue;
        for (const auto& [var, coef] : row.coeffs) s[var] += l * coef;
        val += l * row.rhs;
    }
    for (std::size_t j = 0; j < lp.vars.size(); ++j) {
        if (lp.vars[j].nonneg ? s[j] > lp.objective[j] : s[j] != lp.objective[j]) return false;
    }
    return val == optimum;
}

LpResult solve_bound(const BoundSystem& sys, int N, const Rational& M, const LpOptions& opt) {
    return solve_lp(build_bound_lp(sys, N, M), opt);
}

std::string LpResult::to_json(const LinearProgram& lp) const {
    nlohmann::json j;
    j["status"] = status_str(status);
    if (status == LpStatus::Optimal) {
        j["optimum"] = to_string(optimum);
        j["decimal"] = to_double(optimum);
    }
    nlohmann::json w = nlohmann::json::object();
    for (std::size_t i = 0; i < primal.size() && i < lp.vars.size(); ++i)
        if (sgn(primal[i]) != 0) w[lp.vars[i].name] = to_string(primal[i]);
    j[status == LpStatus::Unbounded ? "direction" : "witness"] = w;
    j["pivots"] = pivots;
    j["rows"] = rowsUsed;
    return j.dump();
}

} // namespace combnet
