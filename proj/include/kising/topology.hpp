#pragma once

#include <algorithm>
#include <cstddef>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "kising/errors.hpp"

namespace kising {

/**
 * Undirected qubit-coupling graph.
 *
 * Qubits are indexed 0..L-1. Edges are unordered pairs without self-loops
 * or duplicates. Immutable once built (the factory functions and the
 * edge-list loader are the intended construction paths), so instances can
 * be shared read-only across sweep workers.
 */
class ConnectivityGraph {
public:
    using Edge = std::pair<int, int>;

    explicit ConnectivityGraph(int n_qubits)
        : n_qubits_(n_qubits), adjacency_(static_cast<std::size_t>(std::max(n_qubits, 0))) {
        if (n_qubits < 1) {
            throw validation_error("graph needs at least one qubit, got " +
                                   std::to_string(n_qubits));
        }
    }

    void add_edge(int j, int k) {
        check_index(j);
        check_index(k);
        if (j == k) {
            throw validation_error("self-loop on qubit " + std::to_string(j));
        }
        if (has_edge(j, k)) {
            throw validation_error("duplicate edge (" + std::to_string(j) + ", " +
                                   std::to_string(k) + ")");
        }
        edges_.emplace_back(std::min(j, k), std::max(j, k));
        adjacency_[static_cast<std::size_t>(j)].push_back(k);
        adjacency_[static_cast<std::size_t>(k)].push_back(j);
    }

    [[nodiscard]] int n_qubits() const { return n_qubits_; }
    [[nodiscard]] int n_edges() const { return static_cast<int>(edges_.size()); }
    [[nodiscard]] const std::vector<Edge>& edges() const { return edges_; }

    [[nodiscard]] const std::vector<int>& neighbors(int j) const {
        check_index(j);
        return adjacency_[static_cast<std::size_t>(j)];
    }

    [[nodiscard]] int degree(int j) const {
        return static_cast<int>(neighbors(j).size());
    }

    [[nodiscard]] int max_degree() const {
        int d = 0;
        for (const auto& nb : adjacency_) d = std::max(d, static_cast<int>(nb.size()));
        return d;
    }

    [[nodiscard]] bool has_edge(int j, int k) const {
        check_index(j);
        check_index(k);
        const auto& nb = adjacency_[static_cast<std::size_t>(j)];
        return std::find(nb.begin(), nb.end(), k) != nb.end();
    }

    /// Mean degree xi = 2M/L.
    [[nodiscard]] double mean_degree() const {
        return 2.0 * static_cast<double>(edges_.size()) / static_cast<double>(n_qubits_);
    }

    [[nodiscard]] bool is_connected() const {
        if (n_qubits_ <= 1) return true;
        std::vector<char> seen(static_cast<std::size_t>(n_qubits_), 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int count = 1;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (int w : adjacency_[static_cast<std::size_t>(v)]) {
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = 1;
                    stack.push_back(w);
                    ++count;
                }
            }
        }
        return count == n_qubits_;
    }

    /// Edge-list text: `qubits N` header, then one `j k` pair per line.
    void to_edge_list(std::ostream& out) const {
        out << "qubits " << n_qubits_ << "\n";
        for (const auto& [j, k] : edges_) out << j << " " << k << "\n";
    }

    [[nodiscard]] std::string to_edge_list() const {
        std::ostringstream out;
        to_edge_list(out);
        return out.str();
    }

private:
    void check_index(int j) const {
        if (j < 0 || j >= n_qubits_) {
            throw validation_error("qubit index " + std::to_string(j) +
                                   " out of range [0, " + std::to_string(n_qubits_) + ")");
        }
    }

    int n_qubits_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adjacency_;
};

/**
 * Parse an edge list from text.
 *
 * Format: optional first line `qubits N`; one `j k` pair per non-empty line;
 * lines whose first non-space character is `#` are comments. Without the
 * header the qubit count is 1 + the largest index seen. Malformed lines,
 * self-loops, duplicate edges and out-of-range indices (when a header is
 * present) are reported with their line number.
 */
inline ConnectivityGraph load_edge_list(std::istream& in) {
    struct PendingEdge {
        int j, k, line;
    };
    std::vector<PendingEdge> pending;
    int declared_qubits = -1;
    bool saw_content = false;

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;          // blank line
        if (first[0] == '#') continue;         // comment line
        if (first == "qubits") {
            if (saw_content || declared_qubits >= 0) {
                throw parse_error("line " + std::to_string(line_no) +
                                  ": 'qubits' header must be the first entry");
            }
            int n = 0;
            std::string rest;
            if (!(ls >> n) || n < 1 || (ls >> rest)) {
                throw parse_error("line " + std::to_string(line_no) +
                                  ": malformed 'qubits' header");
            }
            declared_qubits = n;
            continue;
        }
        saw_content = true;
        int j = 0, k = 0;
        std::string rest;
        std::istringstream pair_stream(line);
        if (!(pair_stream >> j >> k) || j < 0 || k < 0 || (pair_stream >> rest)) {
            throw parse_error("line " + std::to_string(line_no) +
                              ": expected two non-negative integers, got '" + line + "'");
        }
        if (j == k) {
            throw validation_error("line " + std::to_string(line_no) + ": self-loop on qubit " +
                                   std::to_string(j));
        }
        pending.push_back({j, k, line_no});
    }

    int n_qubits = declared_qubits;
    if (n_qubits < 0) {
        int max_index = -1;
        for (const auto& e : pending) max_index = std::max({max_index, e.j, e.k});
        n_qubits = max_index + 1;
        if (n_qubits < 1) {
            throw parse_error("edge list declares no qubits (empty input needs a 'qubits' header)");
        }
    }

    ConnectivityGraph g(n_qubits);
    for (const auto& e : pending) {
        if (e.j >= n_qubits || e.k >= n_qubits) {
            throw validation_error("line " + std::to_string(e.line) + ": index " +
                                   std::to_string(std::max(e.j, e.k)) + " >= declared qubits " +
                                   std::to_string(n_qubits));
        }
        try {
            g.add_edge(e.j, e.k);
        } catch (const validation_error& err) {
            throw validation_error("line " + std::to_string(e.line) + ": " + err.what());
        }
    }
    return g;
}

inline ConnectivityGraph load_edge_list(const std::string& text) {
    std::istringstream in(text);
    return load_edge_list(in);
}

/// Path graph 0-1-...-(n-1).
inline ConnectivityGraph chain(int n) {
    ConnectivityGraph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

/// Cycle graph; needs n >= 3 so the closing edge is neither a self-loop nor a duplicate.
inline ConnectivityGraph ring(int n) {
    if (n < 3) {
        throw validation_error("ring needs at least 3 qubits, got " + std::to_string(n));
    }
    ConnectivityGraph g = chain(n);
    g.add_edge(n - 1, 0);
    return g;
}

/// Complete graph K_n.
inline ConnectivityGraph complete(int n) {
    ConnectivityGraph g(n);
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) g.add_edge(j, k);
    return g;
}

/**
 * Heavy-hexagon lattice in the IBM Eagle style.
 *
 * `rows` rows of line-connected qubits (nominal width 4*cols - 1; the first
 * and last rows are one qubit short) joined by rows of `cols` degree-2
 * bridge qubits. Bridges attach at columns congruent to 0 mod 4 below
 * even-numbered rows and 2 mod 4 below odd-numbered rows, which keeps every
 * degree <= 3. heavy_hex(7, 4) reproduces the 127-qubit, 144-coupler Eagle
 * processor map.
 */
inline ConnectivityGraph heavy_hex(int rows, int cols) {
    if (rows < 1 || cols < 1) {
        throw validation_error("heavy_hex needs rows >= 1 and cols >= 1, got " +
                               std::to_string(rows) + "x" + std::to_string(cols));
    }
    const int width = 4 * cols - 1;

    auto row_columns = [&](int r) {
        int first = 0, last = width - 1;  // inclusive
        if (r == 0) {
            last = width - 2;
        } else if (r == rows - 1) {
            if ((rows - 2) % 2 == 1) first = 1;
            else last = width - 2;
        }
        return std::pair<int, int>{first, last};
    };

    // First pass: index row qubits and bridge qubits in layout order.
    std::vector<std::vector<int>> row_index(static_cast<std::size_t>(rows),
                                            std::vector<int>(static_cast<std::size_t>(width), -1));
    struct Bridge {
        int gap, col, index;
    };
    std::vector<Bridge> bridges;
    int next = 0;
    for (int r = 0; r < rows; ++r) {
        const auto [first, last] = row_columns(r);
        for (int c = first; c <= last; ++c) row_index[r][static_cast<std::size_t>(c)] = next++;
        if (r < rows - 1) {
            for (int k = 0; k < cols; ++k) {
                const int c = (r % 2 == 0) ? 4 * k : 4 * k + 2;
                bridges.push_back({r, c, next++});
            }
        }
    }

    ConnectivityGraph g(next);
    for (int r = 0; r < rows; ++r) {
        const auto [first, last] = row_columns(r);
        for (int c = first; c < last; ++c) {
            g.add_edge(row_index[r][static_cast<std::size_t>(c)],
                       row_index[r][static_cast<std::size_t>(c + 1)]);
        }
    }
    for (const auto& b : bridges) {
        g.add_edge(row_index[b.gap][static_cast<std::size_t>(b.col)], b.index);
        g.add_edge(b.index, row_index[b.gap + 1][static_cast<std::size_t>(b.col)]);
    }
    return g;
}

/// The 127-qubit Eagle instance (L=127, M=144, xi=288/127).
inline ConnectivityGraph heavy_hex_canonical() { return heavy_hex(7, 4); }

}  // namespace kising
