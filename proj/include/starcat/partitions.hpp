#pragma once

#include <string>
#include <vector>

namespace starcat {

// A set partition of [0, n] whose block containing 0 is exactly {0}. Blocks
// are sorted by least element; block 0 is always {0}.
struct SetPartition {
    int n = 0;
    std::vector<std::vector<int>> blocks;
    std::vector<int> block_of;  // index -> block id

    int rank() const { return static_cast<int>(blocks.size()) - 1; }  // r = nonzero blocks
    std::string str() const;

    static SetPartition from_blocks(int n, std::vector<std::vector<int>> blocks);
};

// All partitions of [0, n] with {0} a singleton, in canonical order; the
// count is Bell(n).
std::vector<SetPartition> enumerate_partitions(int n);

long bell_number(int n);

// true iff every block of fine is contained in a block of coarse
bool coarsens(const SetPartition& fine, const SetPartition& coarse);

}  // namespace starcat
