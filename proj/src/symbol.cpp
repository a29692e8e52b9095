#include "mapspace/symbol.hpp"

#include <atomic>

namespace mapspace {

namespace {
std::atomic<std::uint64_t> next_ctx_id{1};
}

GenCtx::GenCtx(std::vector<GenSym> gens) : gens_(std::move(gens)), id_(next_ctx_id.fetch_add(1))
{
    for (std::size_t i = 0; i < gens_.size(); ++i)
        gens_[i].ordinal = static_cast<int>(i);
}

}  // namespace mapspace
