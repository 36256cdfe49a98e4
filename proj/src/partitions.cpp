#include "starcat/partitions.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace starcat {

SetPartition SetPartition::from_blocks(int n, std::vector<std::vector<int>> blocks) {
    SetPartition p;
    p.n = n;
    for (auto& b : blocks) std::sort(b.begin(), b.end());
    std::sort(blocks.begin(), blocks.end(),
              [](const auto& a, const auto& b) { return a[0] < b[0]; });
    p.blocks = std::move(blocks);
    p.block_of.assign(n + 1, -1);
    for (int bi = 0; bi < static_cast<int>(p.blocks.size()); ++bi)
        for (int x : p.blocks[bi]) {
            if (x < 0 || x > n || p.block_of[x] >= 0)
                throw std::invalid_argument("SetPartition: not a partition of [0,n]");
            p.block_of[x] = bi;
        }
    for (int x = 0; x <= n; ++x)
        if (p.block_of[x] < 0) throw std::invalid_argument("SetPartition: missing element");
    if (p.blocks[0] != std::vector<int>{0})
        throw std::invalid_argument("SetPartition: block of 0 must be {0}");
    return p;
}

std::string SetPartition::str() const {
    std::string s;
    for (const auto& b : blocks) {
        s += "{";
        for (size_t i = 0; i < b.size(); ++i) {
            s += std::to_string(b[i]);
            if (i + 1 < b.size()) s += ",";
        }
        s += "}";
    }
    return s;
}

std::vector<SetPartition> enumerate_partitions(int n) {
    // restricted growth strings on [1, n]
    std::vector<SetPartition> out;
    std::vector<int> rgs(n);
    auto emit = [&]() {
        int nb = 0;
        for (int x : rgs) nb = std::max(nb, x + 1);
        std::vector<std::vector<int>> blocks(nb + 1);
        blocks[0].push_back(0);
        for (int i = 0; i < n; ++i) blocks[rgs[i] + 1].push_back(i + 1);
        out.push_back(SetPartition::from_blocks(n, blocks));
    };
    auto rec = [&](auto&& self, int i, int maxv) -> void {
        if (i == n) {
            emit();
            return;
        }
        for (int v = 0; v <= maxv + 1; ++v) {
            rgs[i] = v;
            self(self, i + 1, std::max(maxv, v));
        }
    };
    if (n == 0) {
        out.push_back(SetPartition::from_blocks(0, {{0}}));
        return out;
    }
    rec(rec, 0, -1);
    std::sort(out.begin(), out.end(), [](const SetPartition& a, const SetPartition& b) {
        return a.blocks < b.blocks;
    });
    return out;
}

long bell_number(int n) {
    // Bell triangle
    std::vector<std::vector<long>> tri{{1}};
    for (int i = 1; i <= n; ++i) {
        std::vector<long> row{tri.back().back()};
        for (long x : tri.back()) row.push_back(row.back() + x);
        tri.push_back(row);
    }
    return tri[n][0];
}

bool coarsens(const SetPartition& fine, const SetPartition& coarse) {
    if (fine.n != coarse.n) return false;
    for (const auto& b : fine.blocks) {
        int target = coarse.block_of[b[0]];
        for (int x : b)
            if (coarse.block_of[x] != target) return false;
    }
    return true;
}

}  // namespace starcat
