#include "oracle.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace braid::oracle {

namespace {

void reach(const DagSpec& d, const std::vector<std::vector<int>>& kids, int node,
           std::set<int>& out) {
    if (!out.insert(node).second) return;
    for (int c : kids[node]) reach(d, kids, c, out);
}

std::vector<std::vector<int>> all_children(const DagSpec& d) {
    std::vector<std::vector<int>> kids(d.n);
    for (int k = 0; k < d.n; ++k) {
        std::vector<int> listed;
        for (int s : d.supers[k])
            if (std::find(listed.begin(), listed.end(), s) == listed.end()) listed.push_back(s);
        // the merged graph of all listed supers
        std::set<int> merged;
        for (int s : listed) reach(d, kids, s, merged);
        for (int s : listed) {
            bool interior = false;
            for (int u : merged) {
                if (u == k) continue;
                const auto& uc = kids[u];
                if (std::find(uc.begin(), uc.end(), s) != uc.end()) { interior = true; break; }
            }
            if (!interior) kids[k].push_back(s);
        }
    }
    return kids;
}

void enumerate(const std::vector<std::vector<int>>& kids, std::vector<int>& path,
               std::vector<std::vector<int>>& out) {
    out.push_back(path);
    for (int c : kids[path.back()]) {
        path.push_back(c);
        enumerate(kids, path, out);
        path.pop_back();
    }
}

} // namespace

std::vector<int> children(const DagSpec& d, int node) { return all_children(d)[node]; }

std::vector<std::vector<int>> oracle_paths(const DagSpec& d, int start) {
    auto kids = all_children(d);
    std::vector<std::vector<int>> out;
    std::vector<int> path{start};
    enumerate(kids, path, out);
    return out;
}

std::vector<int> oracle_order(const DagSpec& d, int start, Mode mode) {
    std::vector<int> seq;
    for (const auto& p : oracle_paths(d, start)) seq.push_back(p.back());
    std::vector<int> out;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        bool keep;
        if (mode == Mode::Final)
            keep = std::find(seq.begin() + i + 1, seq.end(), seq[i]) == seq.end();
        else
            keep = std::find(seq.begin(), seq.begin() + i, seq[i]) == seq.begin() + i;
        if (keep) out.push_back(seq[i]);
    }
    return out;
}

std::vector<int> oracle_dispatch(const DagSpec& d, int start, const std::string& selector,
                                 Mode mode) {
    std::vector<int> out;
    for (int node : oracle_order(d, start, mode)) {
        const auto& sels = d.selectors[node];
        if (std::find(sels.begin(), sels.end(), selector) != sels.end()) out.push_back(node);
    }
    return out;
}

namespace {

DagSpec generate_once(std::uint64_t raw_seed, int max_nodes, int max_supers) {
    std::mt19937_64 rng(raw_seed);
    DagSpec d;
    d.n = 3 + static_cast<int>(rng() % static_cast<std::uint64_t>(std::max(1, max_nodes - 2)));
    d.supers.resize(d.n);
    d.selectors.resize(d.n);
    d.ivars.resize(d.n);

    const char* pool[] = {"m0", "m1", "m2", "m3"};
    for (int k = 1; k < d.n; ++k) {
        int want = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_supers));
        std::vector<int> candidates;
        for (int i = 0; i < k; ++i) candidates.push_back(i);
        std::shuffle(candidates.begin(), candidates.end(), rng);
        candidates.resize(std::min<std::size_t>(candidates.size(), static_cast<std::size_t>(want)));
        // ascending order keeps sibling chains consistent across classes
        std::sort(candidates.begin(), candidates.end());
        d.supers[k] = candidates;

        for (const char* sel : pool)
            if (rng() % 10 < 4) d.selectors[k].push_back(sel);
        int nivars = static_cast<int>(rng() % 3);
        for (int i = 0; i < nivars; ++i)
            d.ivars[k].push_back("v" + std::to_string(k) + "_" + std::to_string(i));
    }
    return d;
}

// The precedence pairs every class contributes: itself before each direct
// superclass, and consecutive direct superclasses left to right. A DAG whose
// union of pairs cycles cannot be linearized once the classes meet in one
// inheritance graph, so such draws are rejected.
bool order_consistent(const DagSpec& d) {
    std::set<std::pair<int, int>> rel;
    for (int k = 0; k < d.n; ++k) {
        auto kids = children(d, k);
        for (std::size_t i = 0; i < kids.size(); ++i) {
            rel.emplace(k, kids[i]);
            if (i + 1 < kids.size()) rel.emplace(kids[i], kids[i + 1]);
        }
    }
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::pair<int, int>> add;
        for (const auto& [a, b] : rel)
            for (const auto& [b2, c] : rel)
                if (b == b2 && !rel.count({a, c})) add.emplace_back(a, c);
        if (!add.empty()) {
            grew = true;
            rel.insert(add.begin(), add.end());
        }
    }
    for (const auto& [a, b] : rel)
        if (a == b) return false;
    return true;
}

} // namespace

DagSpec generate_dag(std::uint64_t seed, int max_nodes, int max_supers) {
    std::uint64_t s = seed;
    DagSpec d;
    for (int attempt = 0; attempt < 64; ++attempt) {
        d = generate_once(s, max_nodes, max_supers);
        d.seed = seed;
        if (order_consistent(d)) return d;
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
    }
    return d;  // unreachable in practice
}

} // namespace braid::oracle
