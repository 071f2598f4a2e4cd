#pragma once

#include "rentdiv/money.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace rentdiv::lp {

enum class Relation { LessEqual, Equal, GreaterEqual };
enum class Status { Optimal, Infeasible, Unbounded };

struct Term {
    std::size_t var;
    Money coeff;
};

struct Constraint {
    std::vector<Term> terms;
    Relation relation = Relation::LessEqual;
    Money rhs;
    std::string label;
};

/**
 * A linear program over exact rationals. Variables are free unless declared
 * nonnegative. Without an objective the program is a pure feasibility
 * question and solve() returns any feasible point.
 */
class LinearProgram {
public:
    std::size_t add_variable(std::string name = {}, bool nonnegative = false);
    std::size_t variable_count() const { return names_.size(); }
    const std::string& variable_name(std::size_t v) const { return names_.at(v); }
    bool is_nonnegative(std::size_t v) const { return nonnegative_.at(v); }

    /// Dense form; throws std::invalid_argument on a length mismatch.
    void add_dense_constraint(const std::vector<Money>& coeffs, Relation relation, Money rhs,
                              std::string label = {});
    /// Sparse form; repeated variables are summed. Throws on unknown variables.
    void add_constraint(std::vector<Term> terms, Relation relation, Money rhs, std::string label = {});

    void maximize_dense(const std::vector<Money>& coeffs, Money constant = 0);
    void maximize(std::vector<Term> terms, Money constant = 0);
    bool has_objective() const { return has_objective_; }

    const std::vector<Constraint>& constraints() const { return constraints_; }
    const std::vector<Term>& objective() const { return objective_; }
    const Money& objective_constant() const { return objective_constant_; }

    /// Copy keeping only the constraints whose indices are listed.
    LinearProgram subset(const std::vector<std::size_t>& keep) const;

private:
    std::vector<Term> normalize(std::vector<Term> terms) const;

    std::vector<std::string> names_;
    std::vector<bool> nonnegative_;
    std::vector<Constraint> constraints_;
    std::vector<Term> objective_;
    Money objective_constant_;
    bool has_objective_ = false;
};

struct Outcome {
    Status status = Status::Infeasible;
    std::vector<Money> point;  // set when Optimal
    Money value;               // objective value when Optimal (0 for feasibility)

    bool optimal() const { return status == Status::Optimal; }
};

/// Two-phase primal simplex with Bland's rule. Deterministic.
Outcome solve(const LinearProgram& program);

/// True iff `point` satisfies every constraint (and sign bound) exactly.
bool satisfies(const LinearProgram& program, const std::vector<Money>& point);

/// Indices of a minimal infeasible subset of constraints, found by a deletion
/// filter over constraint order. Empty if the program is feasible.
std::vector<std::size_t> infeasible_subsystem(const LinearProgram& program);

}  // namespace rentdiv::lp
