#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "camo/netlist.hpp"

namespace camo::detail {

// Maintains a topological order of the gate graph under edge insertion
// (Pearce/Kelly style). try_add_edge refuses edges that would close a
// cycle, so the union of real and accepted dummy wires stays acyclic —
// which makes every full candidate assignment acyclic as well.
class DynamicDag {
public:
    explicit DynamicDag(const Netlist& nl) {
        TopoResult topo = topo_order(nl);
        if (!topo.acyclic())
            throw Error("cannot add candidate wires to a cyclic netlist");
        int n = nl.num_gates();
        out_.resize(static_cast<std::size_t>(n));
        in_.resize(static_cast<std::size_t>(n));
        pos_.resize(static_cast<std::size_t>(n));
        order_ = topo.order;
        for (int i = 0; i < n; ++i)
            pos_[static_cast<std::size_t>(order_[static_cast<std::size_t>(i)])] = i;
        mark_.assign(static_cast<std::size_t>(n), 0);
        for (GateId g = 0; g < n; ++g) {
            for (NetId in : nl.gate(g).inputs) {
                GateId d = nl.net(in).driver;
                if (d != no_driver) {
                    out_[static_cast<std::size_t>(d)].push_back(g);
                    in_[static_cast<std::size_t>(g)].push_back(d);
                }
            }
        }
    }

    void add_node() {
        int v = static_cast<int>(out_.size());
        out_.emplace_back();
        in_.emplace_back();
        pos_.push_back(static_cast<int>(order_.size()));
        order_.push_back(v);
        mark_.push_back(0);
    }

    bool try_add_edge(int u, int v) {
        if (u == v)
            return false;
        if (pos_[static_cast<std::size_t>(u)] < pos_[static_cast<std::size_t>(v)]) {
            out_[static_cast<std::size_t>(u)].push_back(v);
            in_[static_cast<std::size_t>(v)].push_back(u);
            return true;
        }
        int lb = pos_[static_cast<std::size_t>(v)];
        int ub = pos_[static_cast<std::size_t>(u)];
        fwd_.clear();
        bwd_.clear();
        ++epoch_;
        if (!dfs_forward(v, u, lb, ub))
            return false;  // cycle, or search budget exhausted: reject
        dfs_backward(u, lb, ub);
        reorder();
        out_[static_cast<std::size_t>(u)].push_back(v);
        in_[static_cast<std::size_t>(v)].push_back(u);
        return true;
    }

private:
    bool dfs_forward(int start, int target, int lb, int ub) {
        stack_.clear();
        stack_.push_back(start);
        mark_[static_cast<std::size_t>(start)] = epoch_;
        std::size_t visits = 0;
        while (!stack_.empty()) {
            int w = stack_.back();
            stack_.pop_back();
            fwd_.push_back(w);
            if (++visits > budget_)
                return false;
            for (int s : out_[static_cast<std::size_t>(w)]) {
                if (s == target)
                    return false;
                int p = pos_[static_cast<std::size_t>(s)];
                if (p < lb || p > ub || mark_[static_cast<std::size_t>(s)] == epoch_)
                    continue;
                mark_[static_cast<std::size_t>(s)] = epoch_;
                stack_.push_back(s);
            }
        }
        return true;
    }

    void dfs_backward(int start, int lb, int ub) {
        stack_.clear();
        stack_.push_back(start);
        mark_[static_cast<std::size_t>(start)] = epoch_;
        while (!stack_.empty()) {
            int w = stack_.back();
            stack_.pop_back();
            bwd_.push_back(w);
            for (int s : in_[static_cast<std::size_t>(w)]) {
                int p = pos_[static_cast<std::size_t>(s)];
                if (p < lb || p > ub || mark_[static_cast<std::size_t>(s)] == epoch_)
                    continue;
                mark_[static_cast<std::size_t>(s)] = epoch_;
                stack_.push_back(s);
            }
        }
    }

    // pack the backward set, then the forward set, into the positions the
    // two sets currently occupy; relative order within each set is kept
    void reorder() {
        auto by_pos = [this](int a, int b) {
            return pos_[static_cast<std::size_t>(a)] < pos_[static_cast<std::size_t>(b)];
        };
        std::sort(fwd_.begin(), fwd_.end(), by_pos);
        std::sort(bwd_.begin(), bwd_.end(), by_pos);
        slots_.clear();
        for (int w : bwd_)
            slots_.push_back(pos_[static_cast<std::size_t>(w)]);
        for (int w : fwd_)
            slots_.push_back(pos_[static_cast<std::size_t>(w)]);
        std::sort(slots_.begin(), slots_.end());
        std::size_t k = 0;
        for (int w : bwd_) {
            pos_[static_cast<std::size_t>(w)] = slots_[k];
            order_[static_cast<std::size_t>(slots_[k])] = w;
            ++k;
        }
        for (int w : fwd_) {
            pos_[static_cast<std::size_t>(w)] = slots_[k];
            order_[static_cast<std::size_t>(slots_[k])] = w;
            ++k;
        }
    }

    std::vector<std::vector<int>> out_, in_;
    std::vector<int> pos_, order_;
    std::vector<std::uint32_t> mark_;
    std::uint32_t epoch_ = 0;
    std::vector<int> stack_, fwd_, bwd_, slots_;
    std::size_t budget_ = 200000;
};

}  // namespace camo::detail
