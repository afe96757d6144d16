// Timing comparison of the serial reference kernels against the OpenMP
// paths. The serial implementations are the testing baseline; this target
// reports what the parallel variants buy on the current machine.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "exo/design_opt.hpp"
#include "exo/geometry.hpp"
#include "exo/parallel.hpp"
#include "exo/pneumatics.hpp"
#include "exo/pouch_model.hpp"
#include "exo/stats.hpp"

#include "support/mc_area.hpp"

using namespace exo;

namespace {

double time_s(const std::function<void()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Row {
    std::string name;
    double serial_s;
    double parallel_s;
};

} // namespace

int main() {
    std::vector<Row> rows;

    {
        const geo::PouchGeometry g = geo::reference_pouch();
        constexpr std::uint64_t kSamples = 20000000;
        double a = 0, b = 0;
        const double ts = time_s([&] {
            a = test::mc_contact_area_mm2(g, 12.0, kSamples, 1, Exec::Serial);
        });
        const double tp = time_s([&] {
            b = test::mc_contact_area_mm2(g, 12.0, kSamples, 1, Exec::Parallel);
        });
        rows.push_back({"monte-carlo contact area (2e7 samples)", ts, tp});
        if (a != b)
            std::fprintf(stderr, "WARNING: MC results differ between policies\n");
    }

    {
        design::DesignConstraints c;
        c.grid_w_step_mm = 0.25; // dense grid to give the kernel real work
        const geo::VolumeModelConfig vcfg = geo::default_volume_config();
        design::DesignReport rs, rp;
        const double ts = time_s([&] { rs = design::optimize_spindle(c, vcfg, Exec::Serial); });
        const double tp = time_s([&] { rp = design::optimize_spindle(c, vcfg, Exec::Parallel); });
        rows.push_back({"design grid search (0.25 mm width grid)", ts, tp});
        if (rs.volume_ml != rp.volume_ml)
            std::fprintf(stderr, "WARNING: optimizer results differ between policies\n");
    }

    {
        std::vector<std::pair<double, double>> paired;
        for (int i = 0; i < 24; ++i)
            paired.emplace_back(uniform01(5, 2 * i), uniform01(5, 2 * i + 1));
        stats::StatResult rs, rp;
        const double ts =
            time_s([&] { rs = stats::wilcoxon_signed_rank(paired, Exec::Serial); });
        const double tp =
            time_s([&] { rp = stats::wilcoxon_signed_rank(paired, Exec::Parallel); });
        rows.push_back({"exact wilcoxon enumeration (n = 24)", ts, tp});
        if (rs.p_value != rp.p_value)
            std::fprintf(stderr, "WARNING: wilcoxon results differ between policies\n");
    }

    {
        pneumo::PneumaticCircuit c;
        c.act_ml = 714.0;
        const auto freqs = pneumo::log_spaced(0.05, 6.0, 24);
        std::vector<pneumo::BodePoint> rs, rp;
        const double ts =
            time_s([&] { rs = pneumo::frequency_response(c, 20.0, 10.0, freqs, Exec::Serial); });
        const double tp = time_s(
            [&] { rp = pneumo::frequency_response(c, 20.0, 10.0, freqs, Exec::Parallel); });
        rows.push_back({"frequency sweep (24 points)", ts, tp});
        for (std::size_t i = 0; i < rs.size(); ++i)
            if (rs[i].magnitude_db != rp[i].magnitude_db)
                std::fprintf(stderr, "WARNING: sweep results differ between policies\n");
    }

    std::printf("threads available: %d\n\n", hardware_threads());
    std::printf("%-44s %10s %10s %9s\n", "kernel", "serial", "openmp", "speedup");
    for (const Row& r : rows)
        std::printf("%-44s %9.3fs %9.3fs %8.2fx\n", r.name.c_str(), r.serial_s, r.parallel_s,
                    r.serial_s / r.parallel_s);
    return 0;
}
