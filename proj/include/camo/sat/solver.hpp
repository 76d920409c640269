#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace camo::sat {

using Var = int;

struct Lit {
    int code = -2;  // 2*var + sign; sign bit set means negated
    bool operator==(const Lit&) const = default;
};

inline Lit make_lit(Var v, bool negated = false) { return Lit{2 * v + (negated ? 1 : 0)}; }
inline Lit operator~(Lit p) { return Lit{p.code ^ 1}; }
inline Var var_of(Lit p) { return p.code >> 1; }
inline bool sign_of(Lit p) { return p.code & 1; }
inline constexpr Lit lit_undef{-2};

enum class Status { Satisfiable, Unsatisfiable, Interrupted };

const char* to_string(Status s);

struct SolveStats {
    std::uint64_t decisions = 0;
    std::uint64_t conflicts = 0;
    std::uint64_t propagations = 0;
    std::uint64_t learned = 0;
    std::uint64_t restarts = 0;
};

struct SolveOutcome {
    Status status = Status::Interrupted;
    std::vector<std::uint8_t> model;  // per-var value when Satisfiable
    SolveStats stats;
};

struct Budget {
    double max_seconds = 0;           // 0 = unlimited
    std::uint64_t max_conflicts = 0;  // 0 = unlimited
};

// Conflict-driven clause-learning solver with incremental clause addition
// and assumption-based solving. Two-watched-literal propagation, first-UIP
// learning, activity-driven decisions, Luby restarts (base 64), phase
// saving, geometric learnt-DB reduction. A solver instance is
// single-threaded; distinct instances are independent.
class Solver {
public:
    Solver();

    Var new_var();
    int num_vars() const { return static_cast<int>(assigns_.size()); }

    // Returns false if the clause set is now unsatisfiable at level 0.
    // Throws if a literal references an unallocated variable.
    bool add_clause(std::span<const Lit> lits);
    bool add_clause(std::initializer_list<Lit> lits) {
        return add_clause(std::span<const Lit>(lits.begin(), lits.size()));
    }

    // Clauses accepted so far (the CNF growth observable).
    std::uint64_t num_clauses() const { return clauses_added_; }

    SolveOutcome solve(std::span<const Lit> assumptions = {}, const Budget& budget = {});
    SolveOutcome solve(std::initializer_list<Lit> assumptions, const Budget& budget = {}) {
        return solve(std::span<const Lit>(assumptions.begin(), assumptions.size()), budget);
    }

    // Invoked roughly every interval_seconds of search time.
    void set_progress_callback(std::function<void(const Solver&)> cb,
                               double interval_seconds = 10.0);

    // Plain backtracking search without clause learning; for differential
    // testing on small instances only.
    void set_learning(bool enabled) { learning_ = enabled; }

    // Raises a variable's decision activity; callers use it to steer early
    // branching (e.g. towards key inputs in a miter).
    void boost_activity(Var v, double amount);

    const SolveStats& stats() const { return stats_; }

    // Permanent clauses in current (level-0 simplified) form.
    std::vector<std::vector<Lit>> snapshot_clauses() const;

private:
    using CRef = std::uint32_t;
    static constexpr CRef cref_undef = 0xffffffffu;
    static constexpr CRef learnt_bit = 0x80000000u;

    struct Watcher {
        CRef cref;
        Lit blocker;
    };

    // clause layout in an arena: [size][lits...]; learnt arena adds LBD and
    // activity words after the size
    std::uint32_t* clause_ptr(CRef c);
    const std::uint32_t* clause_ptr(CRef c) const;
    static int clause_size(const std::uint32_t* p) { return static_cast<int>(p[0]); }
    Lit* clause_lits(std::uint32_t* p, bool learnt) {
        return reinterpret_cast<Lit*>(p + (learnt ? 3 : 1));
    }
    const Lit* clause_lits(const std::uint32_t* p, bool learnt) const {
        return reinterpret_cast<const Lit*>(p + (learnt ? 3 : 1));
    }
    static std::uint32_t& clause_lbd(std::uint32_t* p) { return p[1]; }
    float& clause_act(std::uint32_t* p) { return *reinterpret_cast<float*>(p + 2); }

    CRef alloc_clause(std::span<const Lit> lits, bool learnt);
    void watch_clause(CRef c);

    int value(Lit p) const {
        std::int8_t a = assigns_[static_cast<std::size_t>(var_of(p))];
        return a < 0 ? -1 : (a ^ static_cast<int>(sign_of(p)));
    }
    int value_var(Var v) const { return assigns_[static_cast<std::size_t>(v)]; }

    void unchecked_enqueue(Lit p, CRef from);
    CRef propagate();
    void cancel_until(int level);
    int decision_level() const { return static_cast<int>(trail_lim_.size()); }
    void new_decision_level() { trail_lim_.push_back(static_cast<int>(trail_.size())); }

    void analyze(CRef confl, std::vector<Lit>& out_learnt, int& out_btlevel,
                 std::uint32_t& out_lbd);
    bool lit_redundant(Lit p, std::uint32_t abstract_levels);
    void bump_var(Var v);
    void bump_clause(CRef c);
    void decay_activities();
    Var pick_branch_var();
    void reduce_db();
    bool satisfied_at_level0(const std::uint32_t* p, bool learnt) const;

    bool time_expired();
    SolveOutcome finish(Status st);
    SolveOutcome search_no_learning(std::span<const Lit> assumptions);

    // clause arenas
    std::vector<std::uint32_t> arena_;         // permanent
    std::vector<std::uint32_t> learnt_arena_;  // rebuilt on reduce_db
    std::vector<CRef> clause_refs_;
    std::vector<CRef> learnt_refs_;

    std::vector<std::vector<Watcher>> watches_;  // indexed by lit code
    std::vector<std::int8_t> assigns_;
    std::vector<std::int8_t> polarity_;  // saved phase, 1 = assign true next
    std::vector<int> level_;
    std::vector<CRef> reason_;
    std::vector<Lit> trail_;
    std::vector<int> trail_lim_;
    std::size_t qhead_ = 0;
    bool ok_ = true;

    // decision ordering
    std::vector<double> activity_;
    std::vector<int> heap_;
    std::vector<int> heap_pos_;
    double var_inc_ = 1.0;
    double cla_inc_ = 1.0;
    bool heap_less(Var a, Var b) const {
        double aa = activity_[static_cast<std::size_t>(a)];
        double ab = activity_[static_cast<std::size_t>(b)];
        return aa > ab || (aa == ab && a < b);
    }
    void heap_sift_up(int i);
    void heap_sift_down(int i);
    void heap_insert(Var v);
    Var heap_pop();

    // analysis scratch
    std::vector<std::uint8_t> seen_;
    std::vector<Lit> analyze_stack_, analyze_toclear_;
    std::vector<int> lbd_seen_;
    std::uint32_t lbd_epoch_ = 0;

    bool learning_ = true;
    std::uint64_t clauses_added_ = 0;
    double max_learnts_ = 0;
    SolveStats stats_;

    std::chrono::steady_clock::time_point solve_start_{};
    std::chrono::steady_clock::time_point deadline_{};
    bool has_deadline_ = false;
    std::uint64_t conflict_budget_ = 0;
    std::function<void(const Solver&)> progress_cb_;
    double progress_interval_ = 10.0;
    std::chrono::steady_clock::time_point next_progress_{};
};

}  // namespace camo::sat
