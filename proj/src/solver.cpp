#include "camo/sat/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "camo/netlist.hpp"  // for camo::Error

namespace camo::sat {

namespace {

constexpr double var_decay = 0.95;
constexpr double cla_decay = 0.999;
constexpr int restart_base = 64;

// Finite-subsequence generator for Luby restarts.
double luby(double y, int x) {
    int size, seq;
    for (size = 1, seq = 0; size < x + 1; seq++, size = 2 * size + 1) {
    }
    while (size - 1 != x) {
        size = (size - 1) >> 1;
        seq--;
        x = x % size;
    }
    return std::pow(y, seq);
}

}  // namespace

const char* to_string(Status s) {
    switch (s) {
    case Status::Satisfiable: return "SAT";
    case Status::Unsatisfiable: return "UNSAT";
    case Status::Interrupted: return "INTERRUPTED";
    }
    return "?";
}

Solver::Solver() = default;

Var Solver::new_var() {
    Var v = num_vars();
    assigns_.push_back(-1);
    polarity_.push_back(0);
    level_.push_back(0);
    reason_.push_back(cref_undef);
    activity_.push_back(0.0);
    heap_pos_.push_back(-1);
    seen_.push_back(0);
    lbd_seen_.push_back(0);
    watches_.emplace_back();
    watches_.emplace_back();
    heap_insert(v);
    return v;
}

std::uint32_t* Solver::clause_ptr(CRef c) {
    return (c & learnt_bit) ? &learnt_arena_[c & ~learnt_bit] : &arena_[c];
}

const std::uint32_t* Solver::clause_ptr(CRef c) const {
    return (c & learnt_bit) ? &learnt_arena_[c & ~learnt_bit] : &arena_[c];
}

Solver::CRef Solver::alloc_clause(std::span<const Lit> lits, bool learnt) {
    std::vector<std::uint32_t>& arena = learnt ? learnt_arena_ : arena_;
    CRef c = static_cast<CRef>(arena.size());
    arena.push_back(static_cast<std::uint32_t>(lits.size()));
    if (learnt) {
        arena.push_back(0);  // LBD, filled by the caller
        float act = 0.0f;
        std::uint32_t bits;
        std::memcpy(&bits, &act, 4);
        arena.push_back(bits);
        c |= learnt_bit;
    }
    for (Lit p : lits)
        arena.push_back(static_cast<std::uint32_t>(p.code));
    return c;
}

void Solver::watch_clause(CRef c) {
    std::uint32_t* p = clause_ptr(c);
    const Lit* lits = clause_lits(p, c & learnt_bit);
    watches_[static_cast<std::size_t>((~lits[0]).code)].push_back(Watcher{c, lits[1]});
    watches_[static_cast<std::size_t>((~lits[1]).code)].push_back(Watcher{c, lits[0]});
}

bool Solver::add_clause(std::span<const Lit> lits) {
    if (decision_level() != 0)
        throw Error("add_clause called during search");
    for (Lit p : lits) {
        if (var_of(p) < 0 || var_of(p) >= num_vars())
            throw Error("clause literal references unallocated variable " +
                        std::to_string(var_of(p)));
    }
    clauses_added_++;
    if (!ok_)
        return false;

    // normalize: sort, drop duplicates and level-0 false literals, detect
    // tautologies and satisfied clauses
    std::vector<Lit> c(lits.begin(), lits.end());
    std::sort(c.begin(), c.end(), [](Lit a, Lit b) { return a.code < b.code; });
    std::vector<Lit> out;
    Lit prev = lit_undef;
    for (Lit p : c) {
        if (value(p) == 1)
            return true;  // satisfied at level 0
        if (p == prev || value(p) == 0)
            continue;
        if (prev.code >= 0 && var_of(p) == var_of(prev))
            return true;  // p and ~p: tautology
        out.push_back(p);
        prev = p;
    }

    if (out.empty()) {
        ok_ = false;
        return false;
    }
    if (out.size() == 1) {
        unchecked_enqueue(out[0], cref_undef);
        if (propagate() != cref_undef)
            ok_ = false;
        return ok_;
    }
    CRef cr = alloc_clause(out, false);
    clause_refs_.push_back(cr);
    watch_clause(cr);
    return true;
}

void Solver::unchecked_enqueue(Lit p, CRef from) {
    Var v = var_of(p);
    assigns_[static_cast<std::size_t>(v)] = static_cast<std::int8_t>(sign_of(p) ? 0 : 1);
    level_[static_cast<std::size_t>(v)] = decision_level();
    reason_[static_cast<std::size_t>(v)] = from;
    trail_.push_back(p);
}

Solver::CRef Solver::propagate() {
    CRef confl = cref_undef;
    while (qhead_ < trail_.size()) {
        Lit p = trail_[qhead_++];
        stats_.propagations++;
        std::vector<Watcher>& ws = watches_[static_cast<std::size_t>(p.code)];
        std::size_t i = 0, j = 0;
        const std::size_t n = ws.size();
        while (i < n) {
            Watcher w = ws[i];
            if (value(w.blocker) == 1) {
                ws[j++] = ws[i++];
                continue;
            }
            CRef cr = w.cref;
            bool learnt = cr & learnt_bit;
            std::uint32_t* cp = clause_ptr(cr);
            Lit* lits = clause_lits(cp, learnt);
            const int size = clause_size(cp);
            const Lit false_lit = ~p;
            if (lits[0] == false_lit)
                std::swap(lits[0], lits[1]);
            ++i;
            const Lit first = lits[0];
            if (value(first) == 1) {
                ws[j++] = Watcher{cr, first};
                continue;
            }
            bool moved = false;
            for (int k = 2; k < size; ++k) {
                if (value(lits[k]) != 0) {
                    std::swap(lits[1], lits[k]);
                    watches_[static_cast<std::size_t>((~lits[1]).code)].push_back(
                        Watcher{cr, first});
                    moved = true;
                    break;
                }
            }
            if (moved)
                continue;
            // unit or conflict
            ws[j++] = Watcher{cr, first};
            if (value(first) == 0) {
                confl = cr;
                qhead_ = trail_.size();
                while (i < n)
                    ws[j++] = ws[i++];
            } else {
                unchecked_enqueue(first, cr);
            }
        }
        ws.resize(j);
        if (confl != cref_undef)
            break;
    }
    return confl;
}

void Solver::cancel_until(int level) {
    if (decision_level() <= level)
        return;
    int bound = trail_lim_[static_cast<std::size_t>(level)];
    for (int k = static_cast<int>(trail_.size()) - 1; k >= bound; --k) {
        Var v = var_of(trail_[static_cast<std::size_t>(k)]);
        polarity_[static_cast<std::size_t>(v)] =
            assigns_[static_cast<std::size_t>(v)];
        assigns_[static_cast<std::size_t>(v)] = -1;
        reason_[static_cast<std::size_t>(v)] = cref_undef;
        if (heap_pos_[static_cast<std::size_t>(v)] < 0)
            heap_insert(v);
    }
    trail_.resize(static_cast<std::size_t>(bound));
    trail_lim_.resize(static_cast<std::size_t>(level));
    qhead_ = trail_.size();
}

void Solver::bump_var(Var v) {
    double& a = activity_[static_cast<std::size_t>(v)];
    a += var_inc_;
    if (a > 1e100) {
        for (double& x : activity_)
            x *= 1e-100;
        var_inc_ *= 1e-100;
    }
    if (heap_pos_[static_cast<std::size_t>(v)] >= 0)
        heap_sift_up(heap_pos_[static_cast<std::size_t>(v)]);
}

void Solver::boost_activity(Var v, double amount) {
    if (v < 0 || v >= num_vars())
        throw Error("boost_activity: unallocated variable");
    activity_[static_cast<std::size_t>(v)] += amount;
    if (heap_pos_[static_cast<std::size_t>(v)] >= 0)
        heap_sift_up(heap_pos_[static_cast<std::size_t>(v)]);
}

void Solver::bump_clause(CRef c) {
    if (!(c & learnt_bit))
        return;
    float& a = clause_act(clause_ptr(c));
    a += static_cast<float>(cla_inc_);
    if (a > 1e20f) {
        for (CRef lr : learnt_refs_)
            clause_act(clause_ptr(lr)) *= 1e-20f;
        cla_inc_ *= 1e-20;
    }
}

void Solver::decay_activities() {
    var_inc_ /= var_decay;
    cla_inc_ /= cla_decay;
}

bool Solver::lit_redundant(Lit p, std::uint32_t abstract_levels) {
    analyze_stack_.clear();
    analyze_stack_.push_back(p);
    std::size_t top = analyze_toclear_.size();
    while (!analyze_stack_.empty()) {
        Lit q = analyze_stack_.back();
        analyze_stack_.pop_back();
        CRef r = reason_[static_cast<std::size_t>(var_of(q))];
        bool learnt = r & learnt_bit;
        std::uint32_t* cp = clause_ptr(r);
        Lit* lits = clause_lits(cp, learnt);
        int size = clause_size(cp);
        for (int i = 1; i < size; ++i) {
            Lit l = lits[i];
            Var v = var_of(l);
            if (seen_[static_cast<std::size_t>(v)] ||
                level_[static_cast<std::size_t>(v)] == 0)
                continue;
            std::uint32_t abstract =
                std::uint32_t{1} << (level_[static_cast<std::size_t>(v)] & 31);
            if (reason_[static_cast<std::size_t>(v)] != cref_undef &&
                (abstract & abstract_levels) != 0) {
                seen_[static_cast<std::size_t>(v)] = 1;
                analyze_stack_.push_back(l);
                analyze_toclear_.push_back(l);
            } else {
                for (std::size_t j = top; j < analyze_toclear_.size(); ++j)
                    seen_[static_cast<std::size_t>(var_of(analyze_toclear_[j]))] = 0;
                analyze_toclear_.resize(top);
                return false;
            }
        }
    }
    return true;
}

void Solver::analyze(CRef confl, std::vector<Lit>& out_learnt, int& out_btlevel,
                     std::uint32_t& out_lbd) {
    int path_count = 0;
    Lit p = lit_undef;
    out_learnt.clear();
    out_learnt.push_back(lit_undef);  // slot for the asserting literal
    analyze_toclear_.clear();
    int index = static_cast<int>(trail_.size()) - 1;

    do {
        bool learnt = confl & learnt_bit;
        std::uint32_t* cp = clause_ptr(confl);
        Lit* lits = clause_lits(cp, learnt);
        int size = clause_size(cp);
        bump_clause(confl);
        for (int k = (p == lit_undef) ? 0 : 1; k < size; ++k) {
            Lit q = lits[k];
            Var v = var_of(q);
            if (!seen_[static_cast<std::size_t>(v)] &&
                level_[static_cast<std::size_t>(v)] > 0) {
                bump_var(v);
                seen_[static_cast<std::size_t>(v)] = 1;
                analyze_toclear_.push_back(q);
                if (level_[static_cast<std::size_t>(v)] >= decision_level())
                    path_count++;
                else
                    out_learnt.push_back(q);
            }
        }
        while (!seen_[static_cast<std::size_t>(var_of(trail_[static_cast<std::size_t>(index)]))])
            index--;
        p = trail_[static_cast<std::size_t>(index)];
        index--;
        confl = reason_[static_cast<std::size_t>(var_of(p))];
        seen_[static_cast<std::size_t>(var_of(p))] = 0;
        path_count--;
    } while (path_count > 0);
    out_learnt[0] = ~p;

    // conflict-clause minimization (recursive reason walking)
    std::uint32_t abstract_levels = 0;
    for (std::size_t k = 1; k < out_learnt.size(); ++k)
        abstract_levels |= std::uint32_t{1}
                           << (level_[static_cast<std::size_t>(var_of(out_learnt[k]))] & 31);
    std::size_t keep = 1;
    for (std::size_t k = 1; k < out_learnt.size(); ++k) {
        Lit q = out_learnt[k];
        if (reason_[static_cast<std::size_t>(var_of(q))] == cref_undef ||
            !lit_redundant(q, abstract_levels))
            out_learnt[keep++] = q;
    }
    out_learnt.resize(keep);

    for (Lit q : analyze_toclear_)
        seen_[static_cast<std::size_t>(var_of(q))] = 0;
    seen_[static_cast<std::size_t>(var_of(p))] = 0;

    if (out_learnt.size() == 1) {
        out_btlevel = 0;
    } else {
        std::size_t max_i = 1;
        for (std::size_t k = 2; k < out_learnt.size(); ++k) {
            if (level_[static_cast<std::size_t>(var_of(out_learnt[k]))] >
                level_[static_cast<std::size_t>(var_of(out_learnt[max_i]))])
                max_i = k;
        }
        std::swap(out_learnt[1], out_learnt[max_i]);
        out_btlevel = level_[static_cast<std::size_t>(var_of(out_learnt[1]))];
    }

    // literal block distance: distinct decision levels in the clause
    ++lbd_epoch_;
    out_lbd = 0;
    for (Lit q : out_learnt) {
        int lvl = level_[static_cast<std::size_t>(var_of(q))];
        if (lbd_seen_[static_cast<std::size_t>(lvl)] != static_cast<int>(lbd_epoch_)) {
            lbd_seen_[static_cast<std::size_t>(lvl)] = static_cast<int>(lbd_epoch_);
            ++out_lbd;
        }
    }
}

void Solver::heap_sift_up(int i) {
    Var v = heap_[static_cast<std::size_t>(i)];
    while (i > 0) {
        int parent = (i - 1) >> 1;
        Var pv = heap_[static_cast<std::size_t>(parent)];
        if (!heap_less(v, pv))
            break;
        heap_[static_cast<std::size_t>(i)] = pv;
        heap_pos_[static_cast<std::size_t>(pv)] = i;
        i = parent;
    }
    heap_[static_cast<std::size_t>(i)] = v;
    heap_pos_[static_cast<std::size_t>(v)] = i;
}

void Solver::heap_sift_down(int i) {
    Var v = heap_[static_cast<std::size_t>(i)];
    int n = static_cast<int>(heap_.size());
    for (;;) {
        int child = 2 * i + 1;
        if (child >= n)
            break;
        if (child + 1 < n && heap_less(heap_[static_cast<std::size_t>(child + 1)],
                                       heap_[static_cast<std::size_t>(child)]))
            child++;
        Var cv = heap_[static_cast<std::size_t>(child)];
        if (!heap_less(cv, v))
            break;
        heap_[static_cast<std::size_t>(i)] = cv;
        heap_pos_[static_cast<std::size_t>(cv)] = i;
        i = child;
    }
    heap_[static_cast<std::size_t>(i)] = v;
    heap_pos_[static_cast<std::size_t>(v)] = i;
}

void Solver::heap_insert(Var v) {
    heap_pos_[static_cast<std::size_t>(v)] = static_cast<int>(heap_.size());
    heap_.push_back(v);
    heap_sift_up(static_cast<int>(heap_.size()) - 1);
}

Var Solver::heap_pop() {
    Var v = heap_[0];
    Var last = heap_.back();
    heap_.pop_back();
    heap_pos_[static_cast<std::size_t>(v)] = -1;
    if (!heap_.empty()) {
        heap_[0] = last;
        heap_pos_[static_cast<std::size_t>(last)] = 0;
        heap_sift_down(0);
    }
    return v;
}

Var Solver::pick_branch_var() {
    while (!heap_.empty()) {
        Var v = heap_pop();
        if (value_var(v) < 0)
            return v;
    }
    return -1;
}

bool Solver::satisfied_at_level0(const std::uint32_t* p, bool learnt) const {
    const Lit* lits = clause_lits(p, learnt);
    int size = clause_size(p);
    for (int k = 0; k < size; ++k) {
        Var v = var_of(lits[k]);
        if (level_[static_cast<std::size_t>(v)] == 0 && value(lits[k]) == 1)
            return true;
    }
    return false;
}

void Solver::reduce_db() {
    // called at a restart boundary (decision level 0); glue clauses, current
    // reasons and the better half by (LBD, activity) survive
    std::vector<CRef> sorted = learnt_refs_;
    std::sort(sorted.begin(), sorted.end(), [this](CRef a, CRef b) {
        std::uint32_t* pa = clause_ptr(a);
        std::uint32_t* pb = clause_ptr(b);
        std::uint32_t la = clause_lbd(pa), lb = clause_lbd(pb);
        if (la != lb)
            return la > lb;  // worst first
        float aa = clause_act(pa);
        float ab = clause_act(pb);
        if (aa != ab)
            return aa < ab;
        return a < b;
    });

    std::vector<CRef> keep;
    keep.reserve(learnt_refs_.size());
    std::vector<char> is_reason(learnt_arena_.size(), 0);
    for (Lit p : trail_) {
        CRef r = reason_[static_cast<std::size_t>(var_of(p))];
        if (r != cref_undef && (r & learnt_bit))
            is_reason[r & ~learnt_bit] = 1;
    }
    std::size_t limit = sorted.size() / 2;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        CRef c = sorted[i];
        std::uint32_t* p = clause_ptr(c);
        if (clause_size(p) == 2 || clause_lbd(p) <= 3 || is_reason[c & ~learnt_bit] ||
            i >= limit)
            keep.push_back(c);
    }

    // rebuild the learnt arena and remap references
    std::vector<std::uint32_t> fresh;
    fresh.reserve(learnt_arena_.size());
    std::vector<std::pair<CRef, CRef>> remap;  // old -> new
    remap.reserve(keep.size());
    std::vector<CRef> new_refs;
    new_refs.reserve(keep.size());
    for (CRef c : keep) {
        const std::uint32_t* p = clause_ptr(c);
        int size = clause_size(p);
        CRef nc = static_cast<CRef>(fresh.size()) | learnt_bit;
        for (int k = 0; k < size + 3; ++k)
            fresh.push_back(p[static_cast<std::size_t>(k)]);
        remap.emplace_back(c, nc);
        new_refs.push_back(nc);
    }
    std::sort(remap.begin(), remap.end());
    auto translate = [&remap](CRef c) -> CRef {
        auto it = std::lower_bound(remap.begin(), remap.end(), std::make_pair(c, CRef{0}));
        return (it != remap.end() && it->first == c) ? it->second : cref_undef;
    };
    learnt_arena_ = std::move(fresh);
    learnt_refs_ = std::move(new_refs);
    for (std::size_t v = 0; v < reason_.size(); ++v) {
        CRef r = reason_[v];
        if (r != cref_undef && (r & learnt_bit))
            reason_[v] = translate(r);
    }
    for (auto& ws : watches_)
        ws.clear();
    for (CRef c : clause_refs_)
        watch_clause(c);
    for (CRef c : learnt_refs_)
        watch_clause(c);
}

bool Solver::time_expired() {
    if (!has_deadline_ && !progress_cb_)
        return false;
    auto now = std::chrono::steady_clock::now();
    if (progress_cb_ && now >= next_progress_) {
        progress_cb_(*this);
        next_progress_ =
            now + std::chrono::milliseconds(static_cast<long>(progress_interval_ * 1000));
    }
    return has_deadline_ && now >= deadline_;
}

SolveOutcome Solver::finish(Status st) {
    SolveOutcome out;
    out.status = st;
    out.stats = stats_;
    if (st == Status::Satisfiable) {
        out.model.resize(static_cast<std::size_t>(num_vars()));
        for (int v = 0; v < num_vars(); ++v)
            out.model[static_cast<std::size_t>(v)] =
                static_cast<std::uint8_t>(assigns_[static_cast<std::size_t>(v)] == 1);
        // model validity is part of the solve contract
        for (CRef c : clause_refs_) {
            const std::uint32_t* p = clause_ptr(c);
            const Lit* lits = clause_lits(p, false);
            bool sat = false;
            for (int k = 0; k < clause_size(p) && !sat; ++k) {
                Lit q = lits[k];
                bool val = out.model[static_cast<std::size_t>(var_of(q))];
                sat = sign_of(q) ? !val : val;
            }
            if (!sat)
                throw Error("internal error: model does not satisfy clause set");
        }
    }
    cancel_until(0);
    return out;
}

SolveOutcome Solver::solve(std::span<const Lit> assumptions, const Budget& budget) {
    for (Lit p : assumptions) {
        if (var_of(p) < 0 || var_of(p) >= num_vars())
            throw Error("assumption references unallocated variable");
    }
    solve_start_ = std::chrono::steady_clock::now();
    has_deadline_ = budget.max_seconds > 0;
    if (has_deadline_)
        deadline_ = solve_start_ + std::chrono::milliseconds(
                                       static_cast<long>(budget.max_seconds * 1000));
    conflict_budget_ = budget.max_conflicts ? stats_.conflicts + budget.max_conflicts : 0;
    next_progress_ = solve_start_ + std::chrono::milliseconds(
                                        static_cast<long>(progress_interval_ * 1000));

    if (!ok_)
        return finish(Status::Unsatisfiable);
    if (propagate() != cref_undef) {
        ok_ = false;
        return finish(Status::Unsatisfiable);
    }
    if (!learning_)
        return search_no_learning(assumptions);

    if (max_learnts_ <= 0)
        max_learnts_ = 20000.0;

    std::vector<Lit> learnt;
    std::uint64_t conflicts_since_restart = 0;
    double restart_limit = restart_base * luby(2.0, static_cast<int>(stats_.restarts));
    std::uint64_t ticks = 0;

    for (;;) {
        CRef confl = propagate();
        if (confl != cref_undef) {
            stats_.conflicts++;
            conflicts_since_restart++;
            if (decision_level() == 0) {
                ok_ = false;
                return finish(Status::Unsatisfiable);
            }
            int btlevel = 0;
            std::uint32_t lbd = 0;
            analyze(confl, learnt, btlevel, lbd);
            cancel_until(btlevel);
            if (learnt.size() == 1) {
                unchecked_enqueue(learnt[0], cref_undef);
            } else {
                CRef cr = alloc_clause(learnt, true);
                clause_lbd(clause_ptr(cr)) = lbd;
                learnt_refs_.push_back(cr);
                stats_.learned++;
                bump_clause(cr);
                watch_clause(cr);
                unchecked_enqueue(learnt[0], cr);
            }
            decay_activities();
            if ((stats_.conflicts & 255) == 0 && time_expired())
                return finish(Status::Interrupted);
            if (conflict_budget_ && stats_.conflicts >= conflict_budget_)
                return finish(Status::Interrupted);
        } else {
            if (((++ticks) & 4095) == 0 && time_expired())
                return finish(Status::Interrupted);
            if (conflicts_since_restart >= restart_limit) {
                stats_.restarts++;
                conflicts_since_restart = 0;
                restart_limit = restart_base * luby(2.0, static_cast<int>(stats_.restarts));
                cancel_until(0);
                if (static_cast<double>(learnt_refs_.size()) > max_learnts_) {
                    reduce_db();
                    max_learnts_ *= 1.3;
                }
                continue;
            }
            // extend with assumptions, then decide
            Lit next = lit_undef;
            while (decision_level() < static_cast<int>(assumptions.size())) {
                Lit p = assumptions[static_cast<std::size_t>(decision_level())];
                if (value(p) == 1) {
                    new_decision_level();
                } else if (value(p) == 0) {
                    return finish(Status::Unsatisfiable);
                } else {
                    next = p;
                    break;
                }
            }
            if (next == lit_undef) {
                Var v = pick_branch_var();
                if (v < 0)
                    return finish(Status::Satisfiable);
                stats_.decisions++;
                next = make_lit(v, polarity_[static_cast<std::size_t>(v)] != 1);
            }
            new_decision_level();
            unchecked_enqueue(next, cref_undef);
        }
    }
}

SolveOutcome Solver::search_no_learning(std::span<const Lit> assumptions) {
    // chronological backtracking; flip[i] marks decision levels whose
    // second phase has been tried
    std::vector<char> flipped;
    std::vector<Lit> decision;
    int base = static_cast<int>(assumptions.size());
    for (;;) {
        CRef confl = propagate();
        if (confl != cref_undef) {
            stats_.conflicts++;
            for (;;) {
                if (decision_level() <= base) {
                    bool global = decision_level() == 0;
                    if (global)
                        ok_ = false;
                    return finish(Status::Unsatisfiable);
                }
                int lvl = decision_level();
                Lit d = decision[static_cast<std::size_t>(lvl - base - 1)];
                bool was_flipped = flipped[static_cast<std::size_t>(lvl - base - 1)];
                cancel_until(lvl - 1);
                decision.pop_back();
                flipped.pop_back();
                if (!was_flipped) {
                    decision.push_back(~d);
                    flipped.push_back(1);
                    new_decision_level();
                    unchecked_enqueue(~d, cref_undef);
                    break;
                }
            }
            continue;
        }
        bool enqueued_assumption = false;
        while (decision_level() < base) {
            Lit p = assumptions[static_cast<std::size_t>(decision_level())];
            if (value(p) == 1) {
                new_decision_level();
            } else if (value(p) == 0) {
                return finish(Status::Unsatisfiable);
            } else {
                new_decision_level();
                unchecked_enqueue(p, cref_undef);
                enqueued_assumption = true;
                break;
            }
        }
        if (enqueued_assumption || decision_level() < base)
            continue;
        Var v = pick_branch_var();
        if (v < 0)
            return finish(Status::Satisfiable);
        stats_.decisions++;
        Lit next = make_lit(v, polarity_[static_cast<std::size_t>(v)] != 1);
        decision.push_back(next);
        flipped.push_back(0);
        new_decision_level();
        unchecked_enqueue(next, cref_undef);
    }
}

void Solver::set_progress_callback(std::function<void(const Solver&)> cb,
                                   double interval_seconds) {
    progress_cb_ = std::move(cb);
    progress_interval_ = interval_seconds;
}

std::vector<std::vector<Lit>> Solver::snapshot_clauses() const {
    std::vector<std::vector<Lit>> out;
    if (!ok_)
        out.push_back({});  // level-0 contradiction
    // level-0 units first
    std::size_t bound = trail_lim_.empty() ? trail_.size()
                                           : static_cast<std::size_t>(trail_lim_[0]);
    for (std::size_t i = 0; i < bound; ++i)
        out.push_back({trail_[i]});
    for (CRef c : clause_refs_) {
        const std::uint32_t* p = clause_ptr(c);
        const Lit* lits = clause_lits(p, false);
        out.emplace_back(lits, lits + clause_size(p));
    }
    return out;
}

}  // namespace camo::sat
