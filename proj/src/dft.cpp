#include "wavecore/dft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>

namespace wavecore {

namespace {
// FFTW planning is not thread-safe.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

struct Dft::Impl {
    fftw_complex* in = nullptr;
    fftw_complex* out = nullptr;
    fftw_plan plan = nullptr;

    ~Impl() {
        std::lock_guard lock(planner_mutex());
        if (plan) fftw_destroy_plan(plan);
        fftw_free(in);
        fftw_free(out);
    }
};

Dft::Dft(std::size_t size, Direction direction) : size_(size), impl_(std::make_unique<Impl>()) {
    std::lock_guard lock(planner_mutex());
    impl_->in = fftw_alloc_complex(size);
    impl_->out = fftw_alloc_complex(size);
    std::fill_n(reinterpret_cast<double*>(impl_->in), 2 * size, 0.0);
    impl_->plan = fftw_plan_dft_1d(static_cast<int>(size), impl_->in, impl_->out,
                                   direction == Direction::Forward ? FFTW_FORWARD : FFTW_BACKWARD,
                                   FFTW_ESTIMATE);
}

Dft::~Dft() = default;
Dft::Dft(Dft&&) noexcept = default;
Dft& Dft::operator=(Dft&&) noexcept = default;

std::span<cd> Dft::input() noexcept { return {reinterpret_cast<cd*>(impl_->in), size_}; }

std::span<const cd> Dft::output() const noexcept {
    return {reinterpret_cast<const cd*>(impl_->out), size_};
}

void Dft::execute() noexcept { fftw_execute(impl_->plan); }

void Dft::transform(std::span<const cd> in, std::span<cd> out) noexcept {
    std::copy(in.begin(), in.end(), input().begin());
    execute();
    std::copy(output().begin(), output().end(), out.begin());
}

}  // namespace wavecore
