#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "optophase/check.hpp"
#include "optophase/continuous.hpp"
#include "optophase/output.hpp"
#include "optophase/pulsed.hpp"
#include "optophase/sweep.hpp"
#include "optophase/visibility.hpp"

using namespace optophase;

namespace {

namespace fs = std::filesystem;

int run_cli(const std::string& args, const std::string& env = "")
{
    const std::string cmd = env + " " OPTOPHASE_CLI_PATH " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string read_file(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

fs::path scratch(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / "optophase_test_cli";
    fs::create_directories(dir);
    return dir / name;
}

std::string csv_of(const SweepResult& r)
{
    std::ostringstream os;
    write_csv(r, os);
    return os.str();
}

}  // namespace

TEST_CASE("pulsed sweep over Np")
{
    RunConfig cfg;
    cfg.lambda = 1e-2;
    const SweepResult r = cmd_phase_pulsed(cfg);
    REQUIRE(r.rows.rows() == 101);
    CHECK(r.column("phi_classical")[0] == 0.0);
    // Linear fit of the quantum-classical difference: intercept -> lambda^2
    const Eigen::VectorXd np = r.column("n_photons");
    const Eigen::VectorXd diff = r.column("phi_quantum") - r.column("phi_classical");
    Eigen::MatrixXd A(np.size(), 2);
    A.col(0).setOnes();
    A.col(1) = np;
    const Eigen::Vector2d fit = A.colPivHouseholderQr().solve(diff);
    CHECK(fit[0] == doctest::Approx(1e-4).epsilon(1e-6));
    CHECK(r.meta["axis"] == "np");
}

TEST_CASE("pulsed anchor row")
{
    RunConfig cfg;
    cfg.lambda = 0.1;
    cfg.axis_min = 100.0;
    cfg.axis_max = 100.0;
    cfg.points = 1;
    const SweepResult r = cmd_phase_pulsed(cfg);
    REQUIRE(r.rows.rows() == 1);
    CHECK(r.column("phi_quantum")[0] == doctest::Approx(2.0098666693333079).epsilon(1e-12));
    CHECK(r.column("phi_classical")[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(r.column("modulus_factor")[0] == doctest::Approx(0.98019932676404251).epsilon(1e-12));
}

TEST_CASE("pulsed sweeps over lambda and N")
{
    RunConfig cfg;
    cfg.axis = PulsedAxis::lambda;
    cfg.points = 11;
    const SweepResult by_lambda = cmd_phase_pulsed(cfg);
    CHECK(by_lambda.rows.rows() == 11);
    for (Eigen::Index i = 0; i < 11; ++i) {
        const double lam = by_lambda.rows(i, 1);
        CHECK(by_lambda.column("offset_small_coupling")[i] == doctest::Approx(lam * lam).epsilon(1e-13));
    }

    RunConfig kicks;
    kicks.axis = PulsedAxis::n_kicks;
    kicks.lambda = 0.05;
    const SweepResult by_n = cmd_phase_pulsed(kicks);
    CHECK(by_n.rows.rows() == 62);
    CHECK(by_n.column("n_kicks")[0] == 3.0);

    kicks.points = 10;
    CHECK_THROWS_AS(cmd_phase_pulsed(kicks), std::invalid_argument);
    RunConfig bad;
    bad.axis_min = 10.0;
    bad.axis_max = 1.0;
    CHECK_THROWS_AS(cmd_phase_pulsed(bad), std::invalid_argument);
    RunConfig both;
    both.k = 0.01;
    both.lambda = 0.01;
    CHECK_THROWS_AS(cmd_phase_pulsed(both), std::invalid_argument);
}

TEST_CASE("continuous sweep")
{
    RunConfig cfg;
    cfg.periods = 2.0;
    cfg.n_kicks = 1000;
    cfg.gamma = {0.5, -1.0};
    const SweepResult r = cmd_phase_continuous(cfg);
    REQUIRE(r.rows.rows() == 2 * kPointsPerPeriod + 1);
    for (const char* c : {"phi_quantum", "phi_classical", "phi_semiclassical_qfield", "phi_semiclassical_qmirror"})
        CHECK(r.column(c)[0] == 0.0);
    const Eigen::VectorXd c = r.column("phi_classical");
    CHECK((r.column("phi_semiclassical_qfield") - c).cwiseAbs().maxCoeff() < 1e-8);
    CHECK((r.column("phi_semiclassical_qmirror") - c).cwiseAbs().maxCoeff() < 1e-8);

    const Eigen::VectorXd trotter = r.column("trotter_phi_at_N");
    int defined = 0;
    for (Eigen::Index i = 0; i < trotter.size(); ++i)
        defined += std::isnan(trotter[i]) ? 0 : 1;
    CHECK(defined == 3);   // t = 0, tau, 2 tau
    CHECK(trotter[kPointsPerPeriod] ==
          doctest::Approx(trotter_pulsed_approximation(1e-2, 1e5, 1000).phase).epsilon(1e-12));

    RunConfig anchor;
    const SweepResult a = cmd_phase_continuous(anchor);
    CHECK(a.column("phi_quantum")[kPointsPerPeriod] == doctest::Approx(125.66430138876327).epsilon(1e-12));
    CHECK(a.column("phi_classical")[kPointsPerPeriod] == doctest::Approx(125.66370614359173).epsilon(1e-12));
}

TEST_CASE("visibility presets")
{
    RunConfig cfg;
    cfg.preset = VisibilityPreset::fig2b;
    const SweepResult r = cmd_visibility(cfg);
    const Eigen::Index per_t = 3 * kPointsPerPeriod + 1;
    REQUIRE(r.rows.rows() == 3 * per_t);
    CHECK(r.meta["temperatures_kelvin"].size() == 3);
    for (Eigen::Index c = 3; c < r.rows.cols(); ++c)
        CHECK(r.rows(0, c) == 1.0);
    for (int j = 1; j <= 3; ++j) {
        const Eigen::Index row = j * kPointsPerPeriod;   // T = 1e-5 K block
        CHECK(r.rows(row, 0) == 1e-5);
        CHECK(r.column("nu_q")[row] == doctest::Approx(r.column("nu_q_kerr")[row]).epsilon(1e-12));
        CHECK(r.column("nu_q")[row] < 1.0);
        CHECK(r.column("nu_c")[row] == doctest::Approx(1.0).epsilon(1e-12));
    }

    RunConfig c;
    c.preset = VisibilityPreset::fig2c;
    const SweepResult rc = cmd_visibility(c);
    CHECK(rc.meta["max_abs_gap_one_period"][0].get<double>() > 0.0);
    CHECK(rc.meta["preset"] == "fig2c");

    RunConfig bad = c;
    bad.temperature = 1.0;
    CHECK_THROWS_AS(cmd_visibility(bad), std::invalid_argument);
}

TEST_CASE("rows re-derive from the module operations")
{
    RunConfig cfg;
    cfg.temperature = 2e-2;
    cfg.samples = 2000;
    const SweepResult r = cmd_visibility(cfg);
    const System s = build_system(cfg);
    const double n_bar = thermal_occupation(2e-2, s.omega(), s.constants());
    for (Eigen::Index i = 0; i < r.rows.rows(); i += 100) {
        const double t = r.column("t")[i];
        const VisibilitySample q = quantum_visibility(s.k(), n_bar, 1e5, s.omega() * t);
        CHECK(r.column("nu_q")[i] == q.nu_total);
        CHECK(r.column("nu_c")[i] == classical_visibility(s, 2e-2, t).nu_total);
        CHECK(r.column("nu_c_noisy")[i] == noisy_classical_visibility(s, 2e-2, 1e5, 1e-5, t).nu_total);
        CHECK(std::abs(r.column("nu_c_mc")[i] - r.column("nu_c")[i]) <= 5.0 * r.column("nu_c_mc_stderr")[i] + 1e-12);
    }
    RunConfig pc;
    pc.lambda = 0.02;
    const SweepResult p = cmd_phase_pulsed(pc);
    for (Eigen::Index i = 0; i < p.rows.rows(); i += 25)
        CHECK(p.column("phi_quantum")[i] ==
              quantum_pulsed_mean_field(PolygonLoop{4, p.column("lambda")[i], p.column("n_photons")[i]}).phase);
}

TEST_CASE("JSON round trip is lossless")
{
    RunConfig cfg;
    cfg.n_kicks = 50;
    cfg.points = 33;
    const SweepResult r = cmd_phase_continuous(cfg);
    std::stringstream ss;
    write_json(r, ss);
    const SweepResult back = read_json(ss);
    CHECK(back.meta == r.meta);
    CHECK(back.columns == r.columns);
    REQUIRE(back.rows.rows() == r.rows.rows());
    for (Eigen::Index i = 0; i < r.rows.rows(); ++i)
        for (Eigen::Index c = 0; c < r.rows.cols(); ++c) {
            const double a = r.rows(i, c);
            const double b = back.rows(i, c);
            CHECK(((std::isnan(a) && std::isnan(b)) || a == b));
        }
    std::istringstream broken("{\"schema_version\": 1}");
    CHECK_THROWS_AS(read_json(broken), std::invalid_argument);
}

TEST_CASE("CSV format")
{
    CHECK(format_double(0.1) == "1.0000000000000001e-01");
    CHECK(format_double(std::nan("")) == "nan");
    RunConfig cfg;
    cfg.points = 3;
    const std::string a = csv_of(cmd_phase_continuous(cfg));
    CHECK(a == csv_of(cmd_phase_continuous(cfg)));
    CHECK(a.find("# schema_version: 1\n") == 0);
    CHECK(a.find("t,omega_t,phi_quantum,phi_classical") != std::string::npos);
}

TEST_CASE("check harness")
{
    CheckOptions opt;
    opt.only_suite = "polygon_recurrence";
    const auto ok = run_checks(opt);
    REQUIRE(ok.size() == 1);
    CHECK(ok[0].passed);
    opt.tolerance = 0.0;
    const auto fail = run_checks(opt);
    CHECK_FALSE(fail[0].passed);
    const auto j = check_report_json(fail, opt);
    CHECK(j["passed"] == false);
    CHECK(j["failed"][0] == "polygon_recurrence");
    opt.only_suite = "no_such_suite";
    CHECK_THROWS_AS(run_checks(opt), std::invalid_argument);
    CHECK(check_suites().size() >= 10);
}

TEST_CASE("command line: exit codes, seeds and determinism")
{
    const fs::path a = scratch("a.csv");
    const fs::path b = scratch("b.csv");
    const std::string vis = "visibility --temp-kelvin 0.05 --points 40 --samples 1000 --seed 17 --out ";
    REQUIRE(run_cli(vis + a.string()) == 0);
    REQUIRE(run_cli(vis + b.string()) == 0);
    CHECK(read_file(a) == read_file(b));
    CHECK(read_file(a).find("# seed: 17\n") != std::string::npos);

    REQUIRE(run_cli("phase pulsed --lambda 0.01 --points 5 --out " + a.string(), "OPTOPHASE_SEED=99") == 0);
    CHECK(read_file(a).find("# seed: 99\n") != std::string::npos);
    REQUIRE(run_cli("phase pulsed --lambda 0.01 --points 5 --out " + a.string(), "OPTOPHASE_SEED=") == 0);
    CHECK(read_file(a).find("# seed: 24301\n") != std::string::npos);

    REQUIRE(run_cli("phase continuous --points 9 --format json --out " + a.string()) == 0);
    std::ifstream in(a);
    const SweepResult r = read_json(in);
    CHECK(r.rows.rows() == 9);

    const std::string cfg = std::string(OPTOPHASE_SOURCE_DIR) + "/configs/figure2.cfg";
    CHECK(run_cli("phase continuous --points 5 --config " + cfg) == 0);

    CHECK(run_cli("check --suite polygon_recurrence") == 0);
    CHECK(run_cli("check --suite polygon_recurrence --tolerance 0") == 1);
    CHECK(run_cli("check --suite nonexistent") == 2);
    CHECK(run_cli("check --list") == 0);
    CHECK(run_cli("phase pulsed --bogus") == 2);
    CHECK(run_cli("phase pulsed --axis sideways") == 2);
    CHECK(run_cli("phase pulsed --seed -4") == 2);
    CHECK(run_cli("phase pulsed", "OPTOPHASE_SEED=abc") == 2);
    CHECK(run_cli("phase continuous --config /nonexistent.cfg") == 2);
    CHECK(run_cli("visibility --fig2b --fig2c") == 2);
    CHECK(run_cli("visibility --samples 10") == 2);
    CHECK(run_cli("") == 2);
    CHECK(run_cli("--help") == 0);
}
