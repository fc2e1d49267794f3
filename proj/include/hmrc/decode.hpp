#pragma once

// Erasure decoding.

#include <optional>
#include <vector>

#include "hmrc/parity_check.hpp"

namespace hmrc {

using Received = std::vector<std::optional<Elem>>;

/// Solves H|_X c_X = -H|_{X'} c_{X'} for the erased set X.
/// Throws UnrecoverableError or InconsistentReceived.
std::vector<Elem> decode_erasures(const FMatrix& h, const Received& word);

struct HierarchicalTrace {
    std::size_t solved_local = 0, solved_mid = 0, solved_global = 0;
};

/// Local bands first, then each mid group (its local and mid rows), then the
/// full matrix for whatever remains. Same result as decode_erasures.
std::vector<Elem> decode_hierarchical(const ParityCheck& h, const Received& word, HierarchicalTrace* trace = nullptr);

class UnrecoverableError : public Error {
  public:
    UnrecoverableError(std::size_t erased, std::size_t deficit)
        : Error(ErrorCode::UnrecoverablePattern, std::to_string(erased) + " erasures, rank deficit " +
                                                     std::to_string(deficit)),
          deficit_(deficit) {}
    std::size_t deficit() const noexcept { return deficit_; }

  private:
    std::size_t deficit_;
};

}  // namespace hmrc
