#include "ppopt/coupling.hpp"

#include <deque>
#include <fstream>
#include <numeric>

#include "json.hpp"

namespace ppopt {

CouplingGraph::CouplingGraph(int nodes, std::vector<std::pair<int, int>> edges)
    : n_(nodes), edges_(std::move(edges)) {
    adj_.assign(n_, std::vector<bool>(n_, false));
    nbr_.assign(n_, {});
    for (auto& [a, b] : edges_) {
        if (a < 0 || b < 0 || a >= n_ || b >= n_ || a == b)
            throw std::invalid_argument("bad edge in coupling graph");
        if (adj_[a][b]) continue;
        adj_[a][b] = adj_[b][a] = true;
        nbr_[a].push_back(b);
        nbr_[b].push_back(a);
    }
    // BFS all-pairs hop distances
    dist_.assign(n_, std::vector<int>(n_, -1));
    for (int s = 0; s < n_; ++s) {
        dist_[s][s] = 0;
        std::deque<int> q{s};
        while (!q.empty()) {
            int u = q.front();
            q.pop_front();
            for (int v : nbr_[u])
                if (dist_[s][v] < 0) {
                    dist_[s][v] = dist_[s][u] + 1;
                    q.push_back(v);
                }
        }
        for (int t = 0; t < n_; ++t)
            if (dist_[s][t] < 0) throw Disconnected();
    }
}

CouplingGraph CouplingGraph::line(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return CouplingGraph(n, std::move(e));
}

CouplingGraph CouplingGraph::grid(int rows, int cols) {
    std::vector<std::pair<int, int>> e;
    auto id = [&](int r, int c) { return r * cols + c; };
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols) e.emplace_back(id(r, c), id(r, c + 1));
            if (r + 1 < rows) e.emplace_back(id(r, c), id(r + 1, c));
        }
    return CouplingGraph(rows * cols, std::move(e));
}

CouplingGraph CouplingGraph::complete(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return CouplingGraph(n, std::move(e));
}

CouplingGraph CouplingGraph::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    nlohmann::json j;
    in >> j;
    int n = j.at("n").get<int>();
    std::vector<std::pair<int, int>> e;
    for (const auto& pair : j.at("edges"))
        e.emplace_back(pair.at(0).get<int>(), pair.at(1).get<int>());
    return CouplingGraph(n, std::move(e));
}

CouplingGraph CouplingGraph::from_spec(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon != std::string::npos) {
        std::string kind = spec.substr(0, colon), arg = spec.substr(colon + 1);
        if (kind == "line") return line(std::stoi(arg));
        if (kind == "complete") return complete(std::stoi(arg));
        if (kind == "grid") {
            auto x = arg.find('x');
            if (x == std::string::npos) throw std::invalid_argument("grid wants <r>x<c>");
            return grid(std::stoi(arg.substr(0, x)), std::stoi(arg.substr(x + 1)));
        }
    }
    return from_json_file(spec);
}

bool CouplingGraph::is_complete() const {
    return static_cast<int>(edges_.size()) >= n_ * (n_ - 1) / 2;
}

Mapping Mapping::identity(int n) {
    Mapping m;
    m.l2p_.resize(n);
    m.p2l_.resize(n);
    std::iota(m.l2p_.begin(), m.l2p_.end(), 0);
    std::iota(m.p2l_.begin(), m.p2l_.end(), 0);
    return m;
}

void Mapping::swap_physical(int p1, int p2) {
    int l1 = p2l_[p1], l2 = p2l_[p2];
    std::swap(p2l_[p1], p2l_[p2]);
    l2p_[l1] = p2;
    l2p_[l2] = p1;
}

bool Mapping::is_bijection() const {
    std::vector<bool> seen(l2p_.size(), false);
    for (int p : l2p_) {
        if (p < 0 || p >= static_cast<int>(l2p_.size()) || seen[p]) return false;
        seen[p] = true;
    }
    for (std::size_t l = 0; l < l2p_.size(); ++l)
        if (p2l_[l2p_[l]] != static_cast<int>(l)) return false;
    return true;
}

std::size_t Mapping::hash() const {
    std::size_t h = 14695981039346656037ull;
    for (int p : l2p_) {
        h ^= static_cast<std::size_t>(p);
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace ppopt
