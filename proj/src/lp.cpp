#include "rentdiv/lp.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>

namespace rentdiv::lp {

std::size_t LinearProgram::add_variable(std::string name, bool nonnegative) {
    if (name.empty()) name = "x" + std::to_string(names_.size());
    names_.push_back(std::move(name));
    nonnegative_.push_back(nonnegative);
    return names_.size() - 1;
}

std::vector<Term> LinearProgram::normalize(std::vector<Term> terms) const {
    std::map<std::size_t, Money> merged;
    for (auto& t : terms) {
        if (t.var >= names_.size())
            throw std::invalid_argument("constraint references unknown variable " + std::to_string(t.var));
        t.coeff.canonicalize();
        merged[t.var] += t.coeff;
    }
    std::vector<Term> out;
    for (auto& [var, coeff] : merged)
        if (sgn(coeff) != 0) out.push_back({var, coeff});
    return out;
}

void LinearProgram::add_dense_constraint(const std::vector<Money>& coeffs, Relation relation, Money rhs,
                                         std::string label) {
    if (coeffs.size() != names_.size())
        throw std::invalid_argument("constraint has " + std::to_string(coeffs.size()) +
                                    " coefficients for " + std::to_string(names_.size()) + " variables");
    std::vector<Term> terms;
    for (std::size_t v = 0; v < coeffs.size(); ++v)
        if (sgn(coeffs[v]) != 0) terms.push_back({v, coeffs[v]});
    add_constraint(std::move(terms), relation, std::move(rhs), std::move(label));
}

void LinearProgram::add_constraint(std::vector<Term> terms, Relation relation, Money rhs, std::string label) {
    rhs.canonicalize();
    constraints_.push_back({normalize(std::move(terms)), relation, std::move(rhs), std::move(label)});
}

void LinearProgram::maximize_dense(const std::vector<Money>& coeffs, Money constant) {
    if (coeffs.size() != names_.size())
        throw std::invalid_argument("objective has " + std::to_string(coeffs.size()) + " coefficients for " +
                                    std::to_string(names_.size()) + " variables");
    std::vector<Term> terms;
    for (std::size_t v = 0; v < coeffs.size(); ++v)
        if (sgn(coeffs[v]) != 0) terms.push_back({v, coeffs[v]});
    maximize(std::move(terms), std::move(constant));
}

void LinearProgram::maximize(std::vector<Term> terms, Money constant) {
    objective_ = normalize(std::move(terms));
    constant.canonicalize();
    objective_constant_ = std::move(constant);
    has_objective_ = true;
}

LinearProgram LinearProgram::subset(const std::vector<std::size_t>& keep) const {
    LinearProgram out;
    out.names_ = names_;
    out.nonnegative_ = nonnegative_;
    out.objective_ = objective_;
    out.objective_constant_ = objective_constant_;
    out.has_objective_ = has_objective_;
    for (std::size_t idx : keep) out.constraints_.push_back(constraints_.at(idx));
    return out;
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Dense tableau. Rows whose basic variable is a free structural variable are
// "definition rows": they take part in elimination but never in ratio tests,
// so free variables never leave the basis once they enter.
struct Tableau {
    std::vector<std::vector<Money>> a;
    std::vector<Money> b;
    std::vector<std::size_t> basis;
    std::vector<bool> definition_row;
    std::vector<bool> free_column;
    std::vector<bool> basic;
    std::vector<Money> obj;  // reduced costs of the current phase
    Money obj_value;

    std::size_t cols() const { return free_column.size(); }

    void pivot(std::size_t r, std::size_t c) {
        auto& row = a[r];
        const Money piv = row[c];
        std::vector<std::size_t> nz;
        for (std::size_t k = 0; k < row.size(); ++k)
            if (sgn(row[k]) != 0) {
                row[k] /= piv;
                nz.push_back(k);
            }
        b[r] /= piv;
        Money f;
        for (std::size_t x = 0; x < a.size(); ++x) {
            if (x == r || sgn(a[x][c]) == 0) continue;
            f = a[x][c];
            for (std::size_t k : nz) a[x][k] -= f * row[k];
            b[x] -= f * b[r];
        }
        if (!obj.empty() && sgn(obj[c]) != 0) {
            f = obj[c];
            for (std::size_t k : nz) obj[k] -= f * row[k];
            obj_value += f * b[r];
        }
        if (basis[r] != kNone) basic[basis[r]] = false;
        basis[r] = c;
        basic[c] = true;
    }

    // Express obj in terms of the nonbasic variables.
    void price_out() {
        for (std::size_t r = 0; r < a.size(); ++r) {
            const std::size_t bc = basis[r];
            if (sgn(obj[bc]) == 0) continue;
            const Money f = obj[bc];
            for (std::size_t k = 0; k < a[r].size(); ++k)
                if (sgn(a[r][k]) != 0) obj[k] -= f * a[r][k];
            obj_value += f * b[r];
        }
    }

    // Returns false when the objective is unbounded.
    bool optimize() {
        Money best_ratio, ratio;
        for (;;) {
            std::size_t enter = kNone;
            for (std::size_t c = 0; c < cols(); ++c)
                if (!basic[c] && !free_column[c] && sgn(obj[c]) > 0) {
                    enter = c;
                    break;
                }
            if (enter == kNone) return true;
            std::size_t leave = kNone;
            for (std::size_t r = 0; r < a.size(); ++r) {
                if (definition_row[r] || sgn(a[r][enter]) <= 0) continue;
                ratio = b[r] / a[r][enter];
                if (leave == kNone || ratio < best_ratio ||
                    (ratio == best_ratio && basis[r] < basis[leave])) {
                    leave = r;
                    best_ratio = ratio;
                }
            }
            if (leave == kNone) return false;
            pivot(leave, enter);
        }
    }

    void erase_row(std::size_t r) {
        basic[basis[r]] = false;
        a.erase(a.begin() + static_cast<std::ptrdiff_t>(r));
        b.erase(b.begin() + static_cast<std::ptrdiff_t>(r));
        basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(r));
        definition_row.erase(definition_row.begin() + static_cast<std::ptrdiff_t>(r));
    }
};

}  // namespace

Outcome solve(const LinearProgram& program) {
    const std::size_t nvars = program.variable_count();
    const auto& cons = program.constraints();
    const std::size_t rows = cons.size();

    std::size_t slacks = 0;
    std::vector<std::size_t> slack_of(rows, kNone);
    for (std::size_t r = 0; r < rows; ++r)
        if (cons[r].relation != Relation::Equal) slack_of[r] = nvars + slacks++;

    Tableau t;
    const std::size_t base_cols = nvars + slacks;
    t.a.assign(rows, std::vector<Money>(base_cols));
    t.b.resize(rows);
    t.basis.assign(rows, kNone);
    t.definition_row.assign(rows, false);
    t.free_column.assign(base_cols, false);
    t.basic.assign(base_cols, false);
    for (std::size_t v = 0; v < nvars; ++v) t.free_column[v] = !program.is_nonnegative(v);

    for (std::size_t r = 0; r < rows; ++r) {
        for (const auto& term : cons[r].terms) t.a[r][term.var] = term.coeff;
        t.b[r] = cons[r].rhs;
        if (cons[r].relation == Relation::LessEqual) t.a[r][slack_of[r]] = 1;
        if (cons[r].relation == Relation::GreaterEqual) t.a[r][slack_of[r]] = -1;
    }

    // Phase 0: pivot every free variable into the basis where possible.
    for (std::size_t v = 0; v < nvars; ++v) {
        if (!t.free_column[v]) continue;
        for (std::size_t r = 0; r < t.a.size(); ++r)
            if (!t.definition_row[r] && sgn(t.a[r][v]) != 0) {
                t.pivot(r, v);
                t.definition_row[r] = true;
                break;
            }
    }

    // Initial basis for the remaining rows: own slack when it has the right
    // sign, an artificial otherwise.
    std::vector<std::size_t> needs_artificial;
    for (std::size_t r = 0; r < t.a.size(); ++r) {
        if (t.definition_row[r]) continue;
        if (sgn(t.b[r]) < 0) {
            for (auto& x : t.a[r]) x = -x;
            t.b[r] = -t.b[r];
        }
        const std::size_t s = slack_of[r];
        if (s != kNone && t.a[r][s] == 1) {
            t.basis[r] = s;
            t.basic[s] = true;
        } else {
            needs_artificial.push_back(r);
        }
    }
    const std::size_t art_start = base_cols;
    if (!needs_artificial.empty()) {
        const std::size_t total = base_cols + needs_artificial.size();
        for (auto& row : t.a) row.resize(total);
        t.free_column.resize(total, false);
        t.basic.resize(total, false);
        for (std::size_t idx = 0; idx < needs_artificial.size(); ++idx) {
            const std::size_t r = needs_artificial[idx];
            const std::size_t c = art_start + idx;
            t.a[r][c] = 1;
            t.basis[r] = c;
            t.basic[c] = true;
        }

        // Phase 1: maximize -(sum of artificials).
        t.obj.assign(total, Money(0));
        for (std::size_t c = art_start; c < total; ++c) t.obj[c] = -1;
        t.obj_value = 0;
        t.price_out();
        t.optimize();
        if (sgn(t.obj_value) < 0) return Outcome{Status::Infeasible, {}, Money(0)};

        for (std::size_t r = 0; r < t.a.size();) {
            if (t.basis[r] < art_start) {
                ++r;
                continue;
            }
            std::size_t c = kNone;
            for (std::size_t k = 0; k < art_start; ++k)
                if (!t.basic[k] && !t.free_column[k] && sgn(t.a[r][k]) != 0) {
                    c = k;
                    break;
                }
            if (c == kNone) {
                t.erase_row(r);  // redundant
                continue;
            }
            t.pivot(r, c);
            ++r;
        }
        for (auto& row : t.a) row.resize(art_start);
        t.free_column.resize(art_start);
        t.basic.resize(art_start);
    }

    Outcome out;
    if (program.has_objective()) {
        t.obj.assign(art_start, Money(0));
        for (const auto& term : program.objective()) t.obj[term.var] = term.coeff;
        t.obj_value = program.objective_constant();
        t.price_out();
        // A free variable that could not be pivoted in is unconstrained.
        for (std::size_t v = 0; v < nvars; ++v)
            if (t.free_column[v] && !t.basic[v] && sgn(t.obj[v]) != 0)
                return Outcome{Status::Unbounded, {}, Money(0)};
        if (!t.optimize()) return Outcome{Status::Unbounded, {}, Money(0)};
        out.value = t.obj_value;
    } else {
        out.value = 0;
    }

    out.status = Status::Optimal;
    out.point.assign(nvars, Money(0));
    for (std::size_t r = 0; r < t.a.size(); ++r)
        if (t.basis[r] < nvars) out.point[t.basis[r]] = t.b[r];
    return out;
}

bool satisfies(const LinearProgram& program, const std::vector<Money>& point) {
    if (point.size() != program.variable_count()) return false;
    for (std::size_t v = 0; v < point.size(); ++v)
        if (program.is_nonnegative(v) && sgn(point[v]) < 0) return false;
    Money lhs;
    for (const auto& c : program.constraints()) {
        lhs = 0;
        for (const auto& term : c.terms) lhs += term.coeff * point[term.var];
        switch (c.relation) {
            case Relation::LessEqual:
                if (lhs > c.rhs) return false;
                break;
            case Relation::Equal:
                if (lhs != c.rhs) return false;
                break;
            case Relation::GreaterEqual:
                if (lhs < c.rhs) return false;
                break;
        }
    }
    return true;
}

std::vector<std::size_t> infeasible_subsystem(const LinearProgram& program) {
    std::vector<std::size_t> keep(program.constraints().size());
    for (std::size_t i = 0; i < keep.size(); ++i) keep[i] = i;

    auto feasible = [&](const std::vector<std::size_t>& idx) {
        LinearProgram sub = program.subset(idx);
        LinearProgram plain;
        for (std::size_t v = 0; v < sub.variable_count(); ++v)
            plain.add_variable(sub.variable_name(v), sub.is_nonnegative(v));
        for (const auto& c : sub.constraints()) plain.add_constraint(c.terms, c.relation, c.rhs, c.label);
        return solve(plain).optimal();
    };
    if (feasible(keep)) return {};

    for (std::size_t pos = 0; pos < keep.size();) {
        std::vector<std::size_t> trial = keep;
        trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(pos));
        if (!feasible(trial))
            keep = std::move(trial);
        else
            ++pos;
    }
    return keep;
}

}  // namespace rentdiv::lp
