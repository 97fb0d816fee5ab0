#pragma once

#include <rainbow/graph.hpp>

#include <vector>

namespace rainbow::detail {

// Exact search for k pairwise internally disjoint paths among candidates,
// each given by its internal vertex list.
class DisjointPacker {
public:
    explicit DisjointPacker(int num_vertices) : used_(static_cast<std::size_t>(num_vertices), 0) {}

    bool pack(const std::vector<const std::vector<VertexId> *> &internals, int k, std::vector<int> *chosen = nullptr)
    {
        if (k <= 0)
            return true;
        if (static_cast<int>(internals.size()) < k)
            return false;
        candidates_ = &internals;
        picked_.clear();
        // Paths without internal vertices clash with nothing.
        int free_paths = 0;
        for (std::size_t i = 0; i < internals.size() && free_paths < k; ++i)
            if (internals[i]->empty()) {
                picked_.push_back(static_cast<int>(i));
                ++free_paths;
            }
        bool ok = free_paths >= k || search(0, k - free_paths);
        if (ok && chosen)
            *chosen = picked_;
        return ok;
    }

private:
    bool fits(const std::vector<VertexId> &path) const
    {
        for (auto x : path)
            if (used_[static_cast<std::size_t>(x)])
                return false;
        return true;
    }

    void mark(const std::vector<VertexId> &path, char value)
    {
        for (auto x : path)
            used_[static_cast<std::size_t>(x)] = value;
    }

    bool search(std::size_t from, int need)
    {
        if (need == 0)
            return true;
        const auto &cands = *candidates_;
        for (std::size_t i = from; i < cands.size(); ++i) {
            if (cands.size() - i < static_cast<std::size_t>(need))
                return false;
            const auto &path = *cands[i];
            if (path.empty() || !fits(path))
                continue;
            mark(path, 1);
            picked_.push_back(static_cast<int>(i));
            bool ok = search(i + 1, need - 1);
            mark(path, 0);
            if (ok)
                return true;
            picked_.pop_back();
        }
        return false;
    }

    std::vector<char> used_;
    const std::vector<const std::vector<VertexId> *> *candidates_ = nullptr;
    std::vector<int> picked_;
};

} // namespace rainbow::detail
