// Acceptance gate for the full pipeline. Each numbered check prints one
// PASS/FAIL line with the measured values; the process exits nonzero if
// any check fails. The two reproduce runs dominate the runtime (nine
// 100-epoch fits, minutes each on one core).
#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <string>

#include "entvae/analysis.hpp"
#include "entvae/bvae.hpp"
#include "entvae/cli.hpp"
#include "entvae/dataset.hpp"
#include "entvae/io_util.hpp"
#include "entvae/neuralnet.hpp"
#include "entvae/qstate.hpp"
#include "entvae/rng.hpp"
#include "entvae/trainer.hpp"

using namespace entvae;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeedA = 9;
constexpr std::uint64_t kSeedB = 13;

int failures = 0;

void report(bool ok, const char* name, const std::string& detail) {
  std::printf("%s  %s  [%s]\n", ok ? "PASS" : "FAIL", name, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* pattern, ...) {
  char buf[512];
  va_list args;
  va_start(args, pattern);
  std::vsnprintf(buf, sizeof buf, pattern, args);
  va_end(args);
  return buf;
}

bool in_band(double v, double lo, double hi) { return v >= lo && v <= hi; }

cli::ReproduceResult run_reproduce(std::uint64_t seed, const fs::path& out) {
  cli::ReproduceOptions opts;
  opts.seed = seed;
  opts.out_dir = out;
  std::printf("... reproduce seed %llu -> %s\n",
              static_cast<unsigned long long>(seed), out.c_str());
  std::fflush(stdout);
  return cli::cmd_reproduce(opts);
}

}  // namespace

int main() {
  const fs::path root = fs::temp_directory_path() / "entvae_acceptance";
  fs::remove_all(root);
  fs::create_directories(root);

  const cli::ReproduceResult rep_a = run_reproduce(kSeedA, root / "rep_a");
  const cli::ReproduceResult rep_b = run_reproduce(kSeedB, root / "rep_b");
  const cli::ReproduceRow& full_a = rep_a.rows[0];
  const cli::ReproduceRow& corr_a = rep_a.rows[1];
  const cli::ReproduceRow& local_a = rep_a.rows[2];
  const cli::ReproduceRow& full_b = rep_b.rows[0];
  const cli::ReproduceRow& corr_b = rep_b.rows[1];
  const cli::ReproduceRow& local_b = rep_b.rows[2];

  // 1. Tomographic-complete accuracy bands over two seeds.
  report(in_band(full_a.model_acc, 0.83, 0.93) &&
             in_band(full_b.model_acc, 0.83, 0.93) &&
             in_band(full_a.latent_acc, 0.79, 0.89) &&
             in_band(full_b.latent_acc, 0.79, 0.89),
         "C1 full-subset accuracy",
         fmt("model %.4f/%.4f in [0.83,0.93], latent %.4f/%.4f in [0.79,0.89]",
             full_a.model_acc, full_b.model_acc, full_a.latent_acc,
             full_b.latent_acc));

  // 2. Correlated-9 accuracy bands.
  report(in_band(corr_a.model_acc, 0.78, 0.88) &&
             in_band(corr_b.model_acc, 0.78, 0.88) &&
             in_band(corr_a.latent_acc, 0.75, 0.85) &&
             in_band(corr_b.latent_acc, 0.75, 0.85),
         "C2 correlated-subset accuracy",
         fmt("model %.4f/%.4f in [0.78,0.88], latent %.4f/%.4f in [0.75,0.85]",
             corr_a.model_acc, corr_b.model_acc, corr_a.latent_acc,
             corr_b.latent_acc));

  // 3. Local-6 failure mode and the per-seed ordering.
  const bool local_bands = in_band(local_a.model_acc, 0.50, 0.68) &&
                           in_band(local_b.model_acc, 0.50, 0.68) &&
                           std::fabs(local_a.model_acc - local_a.latent_acc) <= 0.05 &&
                           std::fabs(local_b.model_acc - local_b.latent_acc) <= 0.05;
  const bool ordering = full_a.model_acc >= corr_a.model_acc &&
                        corr_a.model_acc >= local_a.model_acc &&
                        full_b.model_acc >= corr_b.model_acc &&
                        corr_b.model_acc >= local_b.model_acc;
  report(local_bands && ordering, "C3 local-subset failure mode",
         fmt("local model %.4f/%.4f in [0.50,0.68], |model-latent| %.4f/%.4f, "
             "ordering %s",
             local_a.model_acc, local_b.model_acc,
             std::fabs(local_a.model_acc - local_a.latent_acc),
             std::fabs(local_b.model_acc - local_b.latent_acc),
             ordering ? "holds" : "violated"));

  // 4. beta/r_cat regime transition on the full subset.
  {
    const fs::path dir = root / "sweep";
    cli::GenDataOptions gd;
    gd.seed = kSeedA;
    gd.out_dir = dir;
    cli::cmd_gen_data(gd);
    cli::SweepOptions so;
    so.seed = kSeedA;
    so.out_dir = dir;
    so.ratios = {1e-3, 0.5};
    std::printf("... sweep ratios {1e-3, 0.5} seed %llu\n",
                static_cast<unsigned long long>(kSeedA));
    std::fflush(stdout);
    const cli::SweepCmdResult sw = cli::cmd_sweep(so);
    const double low = sw.sweep.rows[0].model_acc;
    const double high = sw.sweep.rows[1].model_acc;
    report(low - high >= 0.10, "C4 ratio regime transition",
           fmt("acc(1e-3) %.4f - acc(0.5) %.4f = %.4f >= 0.10", low, high,
               low - high));
  }

  // 5. PPT criterion property suite.
  {
    using namespace qstate;
    const bool bell_ok = ppt_label(bell_phi_plus()) == EntanglementLabel::Entangled;

    rng::Stream stream(2024, 0x70707470u);
    std::size_t product_sep = 0;
    for (int i = 0; i < 1000; ++i) {
      const ComplexMatrix a = random_ginibre_state(stream, 2);
      const ComplexMatrix b = random_ginibre_state(stream, 2);
      const DensityMatrix rho = DensityMatrix::from_matrix(kron(a, b));
      if (ppt_label(rho) == EntanglementLabel::Separable) ++product_sep;
    }

    const bool werner_ok =
        ppt_label(werner_state(0.33)) == EntanglementLabel::Separable &&
        ppt_label(werner_state(0.34)) == EntanglementLabel::Entangled;

    report(bell_ok && product_sep == 1000 && werner_ok, "C5 PPT oracle",
           fmt("bell %s, product states separable %zu/1000, werner flips in "
               "(0.33,0.34) %s",
               bell_ok ? "entangled" : "wrong", product_sep,
               werner_ok ? "yes" : "no"));
  }

  // 6. Tomography round-trip.
  {
    rng::Stream stream(99, 0x726f756eu);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const qstate::DensityMatrix rho = qstate::random_density_matrix(stream);
      const qstate::ComplexMatrix back =
          qstate::reconstruct_density(qstate::pauli_expectations(rho));
      worst = std::max(worst, rho.matrix.frobenius_distance(back));
    }
    report(worst < 1e-10, "C6 tomography round-trip",
           fmt("max frobenius distance %.3e < 1e-10 over 1000 states", worst));
  }

  // 7. Gradient fidelity: full check on a width/8 clone, strided spot check
  // on the production widths.
  {
    auto check_model = [](const bvae::BvaeConfig& mc, std::uint64_t seed,
                          std::size_t batch, std::size_t max_entries) {
      rng::Stream init(seed, rng::kInitStream);
      bvae::BvaeModel model = bvae::build_model(mc, init);
      rng::Stream xs(seed, 0x64617461u);
      nn::RealMatrix x(batch, mc.input_dim);
      for (double& v : x.data) v = xs.uniform(-1.0, 1.0);
      nn::RealMatrix y(batch, 2);
      for (std::size_t i = 0; i < batch; ++i) y.at(i, i % 2) = 1.0;
      rng::Stream lat(seed, rng::kLatentStream);
      rng::Stream drop(seed, rng::kDropoutStream);
      const bvae::NoiseDraws noise = bvae::draw_noise(model, batch, false, lat, drop);
      auto grads = bvae::backward(model, x, y, 500.0, 1.0, noise);
      auto blocks = bvae::param_blocks(model, grads);
      const auto loss = [&] {
        return bvae::loss_total(model, x, y, 500.0, 1.0, noise).total;
      };
      return nn::grad_check(blocks, loss, 1e-5, max_entries);
    };

    bvae::BvaeConfig small;
    small.encoder_widths = {64, 32, 16, 8, 4};
    small.decoder_widths = {4, 8, 16, 32, 64};
    const double err_small = check_model(small, 17, 6, static_cast<std::size_t>(-1));

    const double err_full = check_model(bvae::BvaeConfig{}, 18, 4, 12);

    report(err_small < 1e-4 && err_full < 1e-4, "C7 gradient fidelity",
           fmt("max relative error: clone %.3e, production spot check %.3e, "
               "tolerance 1e-4",
               err_small, err_full));
  }

  // 8. Ensemble statistics on unbalanced generation.
  {
    const data::LabeledDataset ds = data::generate(10000, 424242, false);
    const auto [sep, ent] = data::class_counts(ds);
    const double fraction = static_cast<double>(sep) / 10000.0;
    report(std::fabs(fraction - 0.24207) <= 0.02, "C8 separable fraction",
           fmt("%.4f within 0.24207 +/- 0.02 (%zu separable, %zu entangled)",
               fraction, sep, ent));
  }

  // 9. Determinism of reproduce and gen-data.
  {
    const cli::ReproduceResult rep_a2 = run_reproduce(kSeedA, root / "rep_a2");
    const bool tables_equal =
        rep_a2.summary_table == rep_a.summary_table &&
        io::read_text_file(rep_a2.summary_csv) ==
            io::read_text_file(rep_a.summary_csv);

    cli::GenDataOptions gd;
    gd.seed = kSeedB;
    gd.out_dir = root / "gen_a";
    const cli::GenDataResult g1 = cli::cmd_gen_data(gd);
    gd.out_dir = root / "gen_b";
    const cli::GenDataResult g2 = cli::cmd_gen_data(gd);
    const bool csv_equal =
        io::read_text_file(g1.train_csv) == io::read_text_file(g2.train_csv) &&
        io::read_text_file(g1.test_csv) == io::read_text_file(g2.test_csv);

    report(tables_equal && csv_equal, "C9 determinism",
           fmt("summary tables %s, dataset csv bytes %s",
               tables_equal ? "identical" : "differ",
               csv_equal ? "identical" : "differ"));
  }

  std::printf("%d of 9 checks failed\n", failures);
  return failures == 0 ? 0 : 1;
}
