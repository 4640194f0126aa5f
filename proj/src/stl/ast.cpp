#include "t3/stl/ast.hpp"

#include <sstream>
#include <stdexcept>

namespace t3::stl {

namespace {

FormulaPtr node(Formula f) { return std::make_shared<const Formula>(std::move(f)); }

void check_interval(const Interval& iv) {
    if (!(iv.lo >= 0.0) || std::isnan(iv.hi) || iv.hi < iv.lo)
        throw std::invalid_argument("interval must satisfy 0 <= lo <= hi");
}

std::string format_seconds(double v) {
    if (!std::isfinite(v)) return "inf";
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

FormulaPtr pred_in(std::string label) {
    Formula f{NodeKind::Predicate};
    f.pred_kind = PredicateKind::In;
    f.pred_name = std::move(label);
    return node(std::move(f));
}

FormulaPtr pred_holds(std::string channel) {
    Formula f{NodeKind::Predicate};
    f.pred_kind = PredicateKind::Holds;
    f.pred_name = std::move(channel);
    return node(std::move(f));
}

FormulaPtr mk_not(FormulaPtr f) {
    Formula n{NodeKind::Not};
    n.lhs = std::move(f);
    return node(std::move(n));
}

static FormulaPtr binary(NodeKind k, FormulaPtr f, FormulaPtr g) {
    Formula n{k};
    n.lhs = std::move(f);
    n.rhs = std::move(g);
    return node(std::move(n));
}

FormulaPtr mk_and(FormulaPtr f, FormulaPtr g) { return binary(NodeKind::And, std::move(f), std::move(g)); }
FormulaPtr mk_or(FormulaPtr f, FormulaPtr g) { return binary(NodeKind::Or, std::move(f), std::move(g)); }
FormulaPtr mk_implies(FormulaPtr f, FormulaPtr g) { return binary(NodeKind::Implies, std::move(f), std::move(g)); }
FormulaPtr mk_iff(FormulaPtr f, FormulaPtr g) { return binary(NodeKind::Iff, std::move(f), std::move(g)); }

FormulaPtr mk_finally(Interval iv, FormulaPtr f) {
    check_interval(iv);
    Formula n{NodeKind::Finally};
    n.interval = iv;
    n.lhs = std::move(f);
    return node(std::move(n));
}

FormulaPtr mk_globally(Interval iv, FormulaPtr f) {
    check_interval(iv);
    Formula n{NodeKind::Globally};
    n.interval = iv;
    n.lhs = std::move(f);
    return node(std::move(n));
}

FormulaPtr mk_until(Interval iv, FormulaPtr f, FormulaPtr g) {
    check_interval(iv);
    Formula n{NodeKind::Until};
    n.interval = iv;
    n.lhs = std::move(f);
    n.rhs = std::move(g);
    return node(std::move(n));
}

bool equal(const Formula& a, const Formula& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case NodeKind::Predicate:
            return a.pred_kind == b.pred_kind && a.pred_name == b.pred_name;
        case NodeKind::Not:
            return equal(*a.lhs, *b.lhs);
        case NodeKind::And:
        case NodeKind::Or:
        case NodeKind::Implies:
        case NodeKind::Iff:
            return equal(*a.lhs, *b.lhs) && equal(*a.rhs, *b.rhs);
        case NodeKind::Finally:
        case NodeKind::Globally:
            return a.interval == b.interval && equal(*a.lhs, *b.lhs);
        case NodeKind::Until:
            return a.interval == b.interval && equal(*a.lhs, *b.lhs) && equal(*a.rhs, *b.rhs);
    }
    return false;
}

namespace {

std::string print_interval(const Interval& iv) {
    return "[" + format_seconds(iv.lo) + "," + format_seconds(iv.hi) + "]";
}

// Fully parenthesized binary nodes keep the printer trivially unambiguous.
void print_rec(const Formula& f, std::string& out) {
    switch (f.kind) {
        case NodeKind::Predicate:
            out += (f.pred_kind == PredicateKind::In) ? "in(" : "holds(";
            out += f.pred_name;
            out += ")";
            return;
        case NodeKind::Not:
            out += "not ";
            print_rec(*f.lhs, out);
            return;
        case NodeKind::And:
        case NodeKind::Or:
        case NodeKind::Implies:
        case NodeKind::Iff: {
            const char* op = f.kind == NodeKind::And   ? " and "
                           : f.kind == NodeKind::Or    ? " or "
                           : f.kind == NodeKind::Implies ? " -> "
                                                         : " <-> ";
            out += "(";
            print_rec(*f.lhs, out);
            out += op;
            print_rec(*f.rhs, out);
            out += ")";
            return;
        }
        case NodeKind::Finally:
        case NodeKind::Globally:
            out += (f.kind == NodeKind::Finally) ? "F" : "G";
            out += print_interval(f.interval);
            out += "(";
            print_rec(*f.lhs, out);
            out += ")";
            return;
        case NodeKind::Until:
            out += "(";
            print_rec(*f.lhs, out);
            out += " U";
            out += print_interval(f.interval);
            out += " ";
            print_rec(*f.rhs, out);
            out += ")";
            return;
    }
}

}  // namespace

std::string print_stl(const Formula& f) {
    std::string out;
    print_rec(f, out);
    return out;
}

FormulaPtr untimed(const FormulaPtr& f) {
    switch (f->kind) {
        case NodeKind::Predicate:
            return f;
        case NodeKind::Not:
            return mk_not(untimed(f->lhs));
        case NodeKind::And:
            return mk_and(untimed(f->lhs), untimed(f->rhs));
        case NodeKind::Or:
            return mk_or(untimed(f->lhs), untimed(f->rhs));
        case NodeKind::Implies:
            return mk_implies(untimed(f->lhs), untimed(f->rhs));
        case NodeKind::Iff:
            return mk_iff(untimed(f->lhs), untimed(f->rhs));
        case NodeKind::Finally:
            return mk_finally(Interval::all(), untimed(f->lhs));
        case NodeKind::Globally:
            return mk_globally(Interval::all(), untimed(f->lhs));
        case NodeKind::Until:
            return mk_until(Interval::all(), untimed(f->lhs), untimed(f->rhs));
    }
    throw std::logic_error("unreachable");
}

double horizon(const Formula& f) {
    switch (f.kind) {
        case NodeKind::Predicate:
            return 0.0;
        case NodeKind::Not:
            return horizon(*f.lhs);
        case NodeKind::And:
        case NodeKind::Or:
        case NodeKind::Implies:
        case NodeKind::Iff:
            return std::max(horizon(*f.lhs), horizon(*f.rhs));
        case NodeKind::Finally:
        case NodeKind::Globally:
            return f.interval.hi + horizon(*f.lhs);
        case NodeKind::Until:
            return f.interval.hi + std::max(horizon(*f.lhs), horizon(*f.rhs));
    }
    return 0.0;
}

FormulaPtr scale_intervals(const FormulaPtr& f, double s) {
    if (!(s > 0.0)) throw std::invalid_argument("interval scale must be positive");
    auto scaled = [s](Interval iv) { return Interval{iv.lo * s, iv.hi * s}; };
    switch (f->kind) {
        case NodeKind::Predicate:
            return f;
        case NodeKind::Not:
            return mk_not(scale_intervals(f->lhs, s));
        case NodeKind::And:
            return mk_and(scale_intervals(f->lhs, s), scale_intervals(f->rhs, s));
        case NodeKind::Or:
            return mk_or(scale_intervals(f->lhs, s), scale_intervals(f->rhs, s));
        case NodeKind::Implies:
            return mk_implies(scale_intervals(f->lhs, s), scale_intervals(f->rhs, s));
        case NodeKind::Iff:
            return mk_iff(scale_intervals(f->lhs, s), scale_intervals(f->rhs, s));
        case NodeKind::Finally:
            return mk_finally(scaled(f->interval), scale_intervals(f->lhs, s));
        case NodeKind::Globally:
            return mk_globally(scaled(f->interval), scale_intervals(f->lhs, s));
        case NodeKind::Until:
            return mk_until(scaled(f->interval), scale_intervals(f->lhs, s), scale_intervals(f->rhs, s));
    }
    throw std::logic_error("unreachable");
}

}  // namespace t3::stl
