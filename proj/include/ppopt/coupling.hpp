#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ppopt {

struct Disconnected : std::runtime_error {
    Disconnected() : std::runtime_error("coupling graph is not connected") {}
};

// Undirected physical-connectivity graph with an all-pairs hop table.
class CouplingGraph {
public:
    CouplingGraph() = default;
    CouplingGraph(int nodes, std::vector<std::pair<int, int>> edges);

    static CouplingGraph line(int n);
    static CouplingGraph grid(int rows, int cols);
    static CouplingGraph complete(int n);
    static CouplingGraph from_json_file(const std::string& path);
    // "line:<n>", "grid:<r>x<c>", "complete:<n>", or a JSON file path
    static CouplingGraph from_spec(const std::string& spec);

    int node_count() const { return n_; }
    bool adjacent(int a, int b) const { return adj_[a][b]; }
    int hop_dist(int a, int b) const { return dist_[a][b]; }
    const std::vector<int>& neighbors(int a) const { return nbr_[a]; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    bool is_complete() const;

private:
    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<bool>> adj_;
    std::vector<std::vector<int>> dist_;
    std::vector<std::vector<int>> nbr_;
};

// Logical-to-physical bijection.  Logical indices beyond the circuit's
// qubit count are idle placeholders so the map stays a permutation.
class Mapping {
public:
    Mapping() = default;
    static Mapping identity(int n);

    int size() const { return static_cast<int>(l2p_.size()); }
    int phys(int logical) const { return l2p_[logical]; }
    int logical(int phys) const { return p2l_[phys]; }

    void swap_physical(int p1, int p2);  // transpose the two occupants

    bool is_bijection() const;
    bool operator==(const Mapping& o) const { return l2p_ == o.l2p_; }
    std::size_t hash() const;
    const std::vector<int>& log_to_phys() const { return l2p_; }

private:
    std::vector<int> l2p_, p2l_;
};

}  // namespace ppopt
