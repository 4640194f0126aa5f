#pragma once

#include <cmath>
#include <limits>
#include <memory>
#include <string>

namespace t3::stl {

// Closed time interval [lo, hi] in seconds; hi may be +inf.
struct Interval {
    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();

    bool unbounded() const { return !std::isfinite(hi); }
    static Interval all() { return {}; }

    bool operator==(const Interval& o) const { return lo == o.lo && hi == o.hi; }
};

enum class NodeKind {
    Predicate,  // in(label) or holds(channel)
    Not,
    And,
    Or,
    Implies,
    Iff,
    Finally,
    Globally,
    Until,
};

enum class PredicateKind { In, Holds };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Immutable recursive formula node. Binary nodes use lhs/rhs, unary
// nodes use lhs only. Temporal nodes carry an interval.
struct Formula {
    NodeKind kind;
    PredicateKind pred_kind = PredicateKind::In;
    std::string pred_name;  // Predicate only
    Interval interval;      // Finally/Globally/Until only
    FormulaPtr lhs;
    FormulaPtr rhs;
};

FormulaPtr pred_in(std::string label);
FormulaPtr pred_holds(std::string channel);
FormulaPtr mk_not(FormulaPtr f);
FormulaPtr mk_and(FormulaPtr f, FormulaPtr g);
FormulaPtr mk_or(FormulaPtr f, FormulaPtr g);
FormulaPtr mk_implies(FormulaPtr f, FormulaPtr g);
FormulaPtr mk_iff(FormulaPtr f, FormulaPtr g);
FormulaPtr mk_finally(Interval iv, FormulaPtr f);
FormulaPtr mk_globally(Interval iv, FormulaPtr f);
FormulaPtr mk_until(Interval iv, FormulaPtr f, FormulaPtr g);

// Structural equality.
bool equal(const Formula& a, const Formula& b);
inline bool equal(const FormulaPtr& a, const FormulaPtr& b) { return equal(*a, *b); }

// Canonical concrete syntax; parse(print_stl(f)) is structurally equal to f.
std::string print_stl(const Formula& f);
inline std::string print_stl(const FormulaPtr& f) { return print_stl(*f); }

// Replaces every temporal interval with [0, inf); boolean structure kept.
FormulaPtr untimed(const FormulaPtr& f);

// Nesting-sum of interval upper bounds; +inf if any interval is unbounded.
double horizon(const Formula& f);
inline double horizon(const FormulaPtr& f) { return horizon(*f); }

// Multiplies every interval bound by s (> 0). Used for case-library sweeps.
FormulaPtr scale_intervals(const FormulaPtr& f, double s);

}  // namespace t3::stl
