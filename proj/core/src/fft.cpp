#include "vlcpos/fft.hpp"

#include <map>
#include <mutex>
#include <utility>

#include <fftw3.h>

namespace vlcpos {

namespace {

// FFTW planning is not thread-safe; execution of an existing plan on new
// arrays is.
class PlanCache {
public:
    ~PlanCache()
    {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }

    fftw_plan get(int n, int sign)
    {
        std::lock_guard lock(mutex_);
        auto it = plans_.find({n, sign});
        if (it != plans_.end()) return it->second;
        std::vector<cplx> scratch(static_cast<std::size_t>(n));
        auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
        fftw_plan plan = fftw_plan_dft_1d(n, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(std::make_pair(n, sign), plan);
        return plan;
    }

private:
    std::mutex mutex_;
    std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& cache()
{
    static PlanCache instance;
    return instance;
}

std::vector<cplx> run(std::span<const cplx> in, int sign)
{
    std::vector<cplx> out(in.begin(), in.end());
    if (out.empty()) return out;
    fftw_plan plan = cache().get(static_cast<int>(out.size()), sign);
    auto* buf = reinterpret_cast<fftw_complex*>(out.data());
    fftw_execute_dft(plan, buf, buf);
    return out;
}

}  // namespace

std::vector<cplx> fft(std::span<const cplx> in) { return run(in, FFTW_FORWARD); }

std::vector<cplx> ifft(std::span<const cplx> in)
{
    auto out = run(in, FFTW_BACKWARD);
    const double scale = 1.0 / static_cast<double>(out.size());
    for (auto& v : out) v *= scale;
    return out;
}

}  // namespace vlcpos
