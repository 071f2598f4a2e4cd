#include "rentdiv/matching.hpp"

#include <numeric>
#include <stdexcept>

namespace rentdiv {

namespace {

void check_square(const WeightMatrix& w) {
    for (const auto& row : w)
        if (row.size() != w.size()) throw std::invalid_argument("weight matrix is not square");
}

}  // namespace

std::vector<std::size_t> hungarian_max(const WeightMatrix& w) {
    check_square(w);
    const std::size_t n = w.size();
    // Min-cost form on -w with potentials; 1-based with a dummy column 0.
    std::vector<Money> u(n + 1), v(n + 1), minv(n + 1);
    std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
    std::vector<bool> used(n + 1), minv_set(n + 1);
    Money cur, delta;
    for (std::size_t i = 1; i <= n; ++i) {
        p[0] = i;
        std::size_t j0 = 0;
        std::fill(used.begin(), used.end(), false);
        std::fill(minv_set.begin(), minv_set.end(), false);
        do {
            used[j0] = true;
            const std::size_t i0 = p[j0];
            bool delta_set = false;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                cur = -w[i0 - 1][j - 1] - u[i0] - v[j];
                if (!minv_set[j] || cur < minv[j]) {
                    minv[j] = cur;
                    minv_set[j] = true;
                    way[j] = j0;
                }
                if (!delta_set || minv[j] < delta) {
                    delta = minv[j];
                    delta_set = true;
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    std::vector<std::size_t> match(n);
    for (std::size_t j = 1; j <= n; ++j) match[p[j] - 1] = j - 1;
    return match;
}

Money matching_weight(const WeightMatrix& w, const std::vector<std::size_t>& match) {
    Money total = 0;
    for (std::size_t i = 0; i < match.size(); ++i) total += w.at(i).at(match[i]);
    return total;
}

std::vector<std::size_t> lexmin_max_matching(const WeightMatrix& w, const RoomPriority& priority) {
    check_square(w);
    const std::size_t n = w.size();
    RoomPriority order = priority;
    if (order.empty()) {
        order.resize(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
    }
    if (order.size() != n) throw std::invalid_argument("room priority has wrong length");
    if (n == 0) return {};

    const Money best = matching_weight(w, hungarian_max(w));
    std::vector<std::size_t> result(n);
    std::vector<bool> taken(n, false);
    Money fixed = 0;
    for (std::size_t i = 0; i < n; ++i) {
        bool placed = false;
        for (std::size_t k : order) {
            if (taken[k]) continue;
            // Best completion of rows i+1.. on the remaining columns.
            std::vector<std::size_t> cols;
            for (std::size_t c = 0; c < n; ++c)
                if (!taken[c] && c != k) cols.push_back(c);
            WeightMatrix sub(n - i - 1, std::vector<Money>(cols.size()));
            for (std::size_t r = 0; r < sub.size(); ++r)
                for (std::size_t c = 0; c < cols.size(); ++c) sub[r][c] = w[i + 1 + r][cols[c]];
            Money rest = sub.empty() ? Money(0) : matching_weight(sub, hungarian_max(sub));
            if (fixed + w[i][k] + rest == best) {
                result[i] = k;
                taken[k] = true;
                fixed += w[i][k];
                placed = true;
                break;
            }
        }
        if (!placed) throw std::logic_error("lexicographic matching lost optimality");
    }
    return result;
}

WeightMatrix apartment_matrix(const Instance& inst, std::size_t j) {
    const std::size_t n = inst.players();
    WeightMatrix w(n, std::vector<Money>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) w[i][k] = inst.value(i, j, k);
    return w;
}

std::vector<std::size_t> max_weight_assignment(const Instance& inst, std::size_t j, const RoomPriority& priority) {
    return lexmin_max_matching(apartment_matrix(inst, j), priority);
}

Assignment welfare_max_profile(const Instance& inst, const RoomPriority& priority) {
    Assignment a;
    for (std::size_t j = 0; j < inst.apartments(); ++j) a.perm.push_back(max_weight_assignment(inst, j, priority));
    return a;
}

}  // namespace rentdiv
