#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace strongdeps::sat {

using Var = std::int32_t;
constexpr Var kUndefVar = -1;

// Literal encoded as 2*var + sign (sign set = negated), MiniSat style.
struct Lit {
    std::int32_t code = -2;

    static Lit make(Var v, bool negated) { return Lit{2 * v + (negated ? 1 : 0)}; }
    static Lit pos(Var v) { return make(v, false); }
    static Lit neg(Var v) { return make(v, true); }

    Var var() const { return code >> 1; }
    bool negated() const { return code & 1; }
    Lit operator~() const { return Lit{code ^ 1}; }
    friend bool operator==(Lit, Lit) = default;
};

enum class Value : std::int8_t { False = -1, Undef = 0, True = 1 };

inline Value negate(Value v) { return static_cast<Value>(-static_cast<std::int8_t>(v)); }

// Incremental CDCL solver over a fixed clause set, tuned for repeated
// small queries under assumptions. Fully deterministic: decisions take
// the lowest-index unassigned variable with polarity false (models are
// biased toward small true-sets), no randomisation, no restarts.
//
// Learned clauses are implied by the base formula alone, so keeping them
// across solve() calls never changes a sat/unsat answer. Callers that
// depend on the *model* (not just the answer) must call forget_learned()
// first to make the model a pure function of the base clauses.
class Solver {
public:
    using ClauseRef = std::uint32_t;
    static constexpr ClauseRef kNoReason = std::numeric_limits<ClauseRef>::max();

    Var new_var() {
        Var v = static_cast<Var>(assigns_.size());
        assigns_.push_back(Value::Undef);
        level_.push_back(0);
        reason_.push_back(kNoReason);
        watches_.emplace_back();
        watches_.emplace_back();
        return v;
    }

    int num_vars() const { return static_cast<int>(assigns_.size()); }
    bool ok() const { return ok_; }

    // Adds a base clause. Must be called at decision level 0 (i.e. before
    // or between solves). Returns false once the base formula is
    // unsatisfiable on its own.
    bool add_clause(std::vector<Lit> lits) {
        assert(decision_level() == 0);
        assert(clauses_.size() == base_clause_count_);  // build before solving
        if (!ok_) return false;

        // strip duplicates, satisfied clauses, and level-0-false literals
        std::sort(lits.begin(), lits.end(),
                  [](Lit a, Lit b) { return a.code < b.code; });
        std::vector<Lit> out;
        Lit prev{-2};
        for (Lit l : lits) {
            if (l == prev) continue;
            if (l == ~prev || value(l) == Value::True) return true;  // tautology / satisfied
            if (value(l) != Value::False) out.push_back(l);
            prev = l;
        }
        if (out.empty()) {
            ok_ = false;
            return false;
        }
        base_clause_count_ = clauses_.size() + 1;
        if (out.size() == 1) {
            clauses_.push_back({out});
            enqueue(out[0], kNoReason);
            ok_ = propagate() == kNoReason;
            return ok_;
        }
        attach(static_cast<ClauseRef>(clauses_.size()), out[0], out[1]);
        clauses_.push_back({std::move(out)});
        return true;
    }

    // Solves under the given assumption literals. True = satisfiable; the
    // model is then available through model_value().
    bool solve(std::span<const Lit> assumptions = {}) {
        if (!ok_) return false;
        cancel_until(0);
        if (clauses_.size() - base_clause_count_ > learnt_cap()) forget_learned();
        if (propagate() != kNoReason) {
            ok_ = false;
            return false;
        }

        for (;;) {
            ClauseRef confl = propagate();
            if (confl != kNoReason) {
                if (decision_level() == 0) {
                    ok_ = false;
                    return false;
                }
                std::vector<Lit> learnt;
                int bt_level = analyze(confl, learnt);
                cancel_until(bt_level);
                if (learnt.size() == 1) {
                    enqueue(learnt[0], kNoReason);
                    clauses_.push_back({std::move(learnt)});  // kept for the cap accounting
                } else {
                    ClauseRef cr = static_cast<ClauseRef>(clauses_.size());
                    attach(cr, learnt[0], learnt[1]);
                    Lit first = learnt[0];
                    clauses_.push_back({std::move(learnt)});
                    enqueue(first, cr);
                }
                continue;
            }

            // place pending assumptions, then decide
            Lit next{-2};
            bool have_next = false;
            while (decision_level() < static_cast<int>(assumptions.size())) {
                Lit p = assumptions[decision_level()];
                if (value(p) == Value::True) {
                    new_decision_level();  // already satisfied: dummy level
                } else if (value(p) == Value::False) {
                    cancel_until(0);
                    return false;  // unsat under assumptions
                } else {
                    next = p;
                    have_next = true;
                    break;
                }
            }
            if (!have_next) {
                Var v = pick_branch_var();
                if (v == kUndefVar) {
                    save_model();
                    cancel_until(0);
                    return true;
                }
                next = Lit::neg(v);  // default polarity false
            }
            new_decision_level();
            enqueue(next, kNoReason);
        }
    }

    Value model_value(Var v) const { return model_[v]; }

    // Drops every learned clause; afterwards the solver behaves exactly
    // like a freshly loaded copy of the base formula.
    void forget_learned() {
        cancel_until(0);
        clauses_.resize(base_clause_count_);
        for (auto& w : watches_) w.clear();
        for (ClauseRef cr = 0; cr < clauses_.size(); ++cr)
            if (clauses_[cr].lits.size() >= 2)
                attach(cr, clauses_[cr].lits[0], clauses_[cr].lits[1]);
        // level-0 facts stay true; their reasons may be gone
        for (Lit l : trail_) reason_[l.var()] = kNoReason;
        qhead_ = 0;  // replay propagation against the rebuilt watches
    }

    std::size_t base_clause_count() const { return base_clause_count_; }
    const std::vector<Lit>& base_clause(std::size_t i) const { return clauses_[i].lits; }

private:
    struct Clause {
        std::vector<Lit> lits;
    };
    struct Watcher {
        ClauseRef cref;
        Lit blocker;
    };

    Value value(Lit l) const {
        Value v = assigns_[l.var()];
        return l.negated() ? negate(v) : v;
    }
    Value value(Var v) const { return assigns_[v]; }

    int decision_level() const { return static_cast<int>(trail_lim_.size()); }

    void new_decision_level() {
        trail_lim_.push_back(static_cast<int>(trail_.size()));
        head_save_.push_back(search_head_);
    }

    void enqueue(Lit l, ClauseRef from) {
        assert(value(l) == Value::Undef);
        assigns_[l.var()] = l.negated() ? Value::False : Value::True;
        level_[l.var()] = decision_level();
        reason_[l.var()] = from;
        trail_.push_back(l);
    }

    void cancel_until(int level) {
        if (decision_level() <= level) return;
        int keep = trail_lim_[level];
        for (int i = static_cast<int>(trail_.size()) - 1; i >= keep; --i)
            assigns_[trail_[i].var()] = Value::Undef;
        trail_.resize(keep);
        search_head_ = head_save_[level];
        trail_lim_.resize(level);
        head_save_.resize(level);
        qhead_ = trail_.size();
    }

    Var pick_branch_var() {
        while (search_head_ < num_vars() && value(search_head_) != Value::Undef)
            ++search_head_;
        return search_head_ < num_vars() ? search_head_ : kUndefVar;
    }

    void attach(ClauseRef cr, Lit a, Lit b) {
        watches_[a.code].push_back({cr, b});
        watches_[b.code].push_back({cr, a});
    }

    // Two-watched-literal unit propagation. Returns a conflicting clause
    // or kNoReason.
    ClauseRef propagate() {
        while (qhead_ < trail_.size()) {
            Lit p = trail_[qhead_++];         // p just became true
            auto& ws = watches_[(~p).code];   // clauses watching ~p
            std::size_t i = 0, j = 0;
            while (i < ws.size()) {
                Watcher w = ws[i];
                if (value(w.blocker) == Value::True) {
                    ws[j++] = ws[i++];
                    continue;
                }
                auto& lits = clauses_[w.cref].lits;
                Lit false_lit = ~p;
                if (lits[0] == false_lit) std::swap(lits[0], lits[1]);
                ++i;
                Lit first = lits[0];
                if (first != w.blocker && value(first) == Value::True) {
                    ws[j++] = {w.cref, first};
                    continue;
                }
                bool moved = false;
                for (std::size_t k = 2; k < lits.size(); ++k) {
                    if (value(lits[k]) != Value::False) {
                        std::swap(lits[1], lits[k]);
                        watches_[lits[1].code].push_back({w.cref, first});
                        moved = true;
                        break;
                    }
                }
                if (moved) continue;  // watcher migrated
                ws[j++] = {w.cref, first};
                if (value(first) == Value::False) {
                    // conflict: keep the remaining watchers and bail out
                    while (i < ws.size()) ws[j++] = ws[i++];
                    ws.resize(j);
                    qhead_ = trail_.size();
                    return w.cref;
                }
                enqueue(first, w.cref);
            }
            ws.resize(j);
        }
        return kNoReason;
    }

    // First-UIP conflict analysis. Fills `learnt` with the asserting
    // literal first and returns the backtrack level.
    int analyze(ClauseRef confl, std::vector<Lit>& learnt) {
        learnt.clear();
        learnt.push_back(Lit{-2});  // slot for the asserting literal
        if (seen_.size() < static_cast<std::size_t>(num_vars()))
            seen_.resize(num_vars(), 0);

        int path_count = 0;
        Lit p{-2};
        int index = static_cast<int>(trail_.size()) - 1;

        do {
            assert(confl != kNoReason);
            const auto& lits = clauses_[confl].lits;
            for (std::size_t k = (p.code == -2 ? 0 : 1); k < lits.size(); ++k) {
                Lit q = lits[k];
                if (!seen_[q.var()] && level_[q.var()] > 0) {
                    seen_[q.var()] = 1;
                    if (level_[q.var()] >= decision_level())
                        ++path_count;
                    else
                        learnt.push_back(q);
                }
            }
            while (!seen_[trail_[index--].var()]) {}
            p = trail_[index + 1];
            confl = reason_[p.var()];
            seen_[p.var()] = 0;
            --path_count;
        } while (path_count > 0);
        learnt[0] = ~p;
        for (std::size_t k = 1; k < learnt.size(); ++k)
            seen_[learnt[k].var()] = 0;

        if (learnt.size() == 1) return 0;
        // move a literal from the backtrack level into the second watch slot
        std::size_t max_i = 1;
        for (std::size_t k = 2; k < learnt.size(); ++k)
            if (level_[learnt[k].var()] > level_[learnt[max_i].var()]) max_i = k;
        std::swap(learnt[1], learnt[max_i]);
        return level_[learnt[1].var()];
    }

    void save_model() {
        model_.assign(assigns_.begin(), assigns_.end());
    }

    std::size_t learnt_cap() const {
        return std::max<std::size_t>(10'000, 2 * base_clause_count_);
    }

    bool ok_ = true;
    std::vector<Clause> clauses_;  // base clauses first, learned after
    std::size_t base_clause_count_ = 0;
    std::vector<std::vector<Watcher>> watches_;  // indexed by Lit::code
    std::vector<Value> assigns_;
    std::vector<std::int32_t> level_;
    std::vector<ClauseRef> reason_;
    std::vector<Lit> trail_;
    std::vector<int> trail_lim_;
    std::vector<Var> head_save_;
    std::size_t qhead_ = 0;
    Var search_head_ = 0;
    std::vector<char> seen_;
    std::vector<Value> model_;
};

}  // namespace strongdeps::sat
