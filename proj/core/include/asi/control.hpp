#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "asi/error.hpp"
#include "asi/pool.hpp"

namespace asi {

/// True iff every contiguous window of length cyclicality_bound inside
/// `window` contains every index of {0,...,m-1}. Throws InvalidParameter when
/// the bound is below m and ContractViolation when the sequence is shorter
/// than the bound or holds an out-of-range index.
bool almost_cyclic_check(std::span<const std::size_t> window, std::size_t m,
                         std::size_t cyclicality_bound);

enum class ControlKind { Cyclic, Scripted, PerNodeCyclic };

/// Emits the operator index applied at each iteration. Every emitted index is
/// in {0,...,m-1} and every window of length almost_cyclicality() contains all
/// of them.
class ControlSequence {
  public:
    static ControlSequence cyclic(std::size_t m);

    /// Repeats the given finite script forever. The script must mention every
    /// operator at least once; the cyclicality bound is computed from the
    /// repeated script.
    static ControlSequence scripted(std::size_t m, std::vector<std::size_t> script);

    /// Deterministic round-robin merge of per-node cyclic cursors: nodes take
    /// turns in index order, each emitting the next operator of its own
    /// subcollection.
    static ControlSequence per_node_cyclic(std::size_t m, NodePool pool);

    std::size_t operator_count() const { return m_; }
    ControlKind kind() const { return kind_; }
    std::size_t almost_cyclicality() const { return cyclicality_; }

    std::size_t next();
    void reset();

  private:
    ControlSequence() = default;

    ControlKind kind_ = ControlKind::Cyclic;
    std::size_t m_ = 0;
    std::size_t cyclicality_ = 0;
    std::size_t cursor_ = 0;
    std::vector<std::size_t> script_;
    std::optional<NodePool> pool_;
    std::size_t pool_node_ = 0;
};

} // namespace asi
