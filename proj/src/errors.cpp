#include "wavecore/errors.hpp"

namespace wavecore {

namespace {
std::string describe_nulls(const std::vector<std::size_t>& subcarriers) {
    std::string msg = "channel response below the deep-null guard on subcarrier(s)";
    for (std::size_t i = 0; i < subcarriers.size() && i < 16; ++i) msg += " " + std::to_string(subcarriers[i]);
    if (subcarriers.size() > 16) msg += " ...";
    return msg;
}
}  // namespace

SingularChannelError::SingularChannelError(std::vector<std::size_t> subcarriers)
    : Error(describe_nulls(subcarriers)), subcarriers_(std::move(subcarriers)) {}

}  // namespace wavecore
