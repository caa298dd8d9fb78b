#pragma once

#include "blockcur/types.hpp"

namespace blockcur {

/// Splits [0, dimSize) into blockCount contiguous blocks. The first
/// (dimSize mod blockCount) blocks get the ceiling length, the rest the
/// floor, so lengths differ by at most one and every block is non-empty.
inline BlockPartition partition(Index dimSize, Index blockCount, Axis axis) {
  if (dimSize < 1) {
    throw InvalidArgument("partition: dimension size must be >= 1");
  }
  if (blockCount < 1 || blockCount > dimSize) {
    throw InvalidArgument("partition: block count must satisfy 1 <= b <= dimSize, got b=" +
                          std::to_string(blockCount) + " for dimSize=" + std::to_string(dimSize));
  }
  const Index base = dimSize / blockCount;
  const Index extra = dimSize % blockCount;
  BlockPartition part;
  part.axis = axis;
  part.blocks.reserve(static_cast<std::size_t>(blockCount));
  Index start = 0;
  for (Index k = 0; k < blockCount; ++k) {
    const Index len = base + (k < extra ? 1 : 0);
    part.blocks.push_back({start, len});
    start += len;
  }
  return part;
}

}  // namespace blockcur
