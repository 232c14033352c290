#include "levyid/dataset_io.hpp"
#include "levyid/harness.hpp"
#include "levyid/report.hpp"

#include <json.hpp>
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

using namespace levyid;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("levyid_harness_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}

std::string first_data_header(const fs::path& csv) {
    std::ifstream f(csv);
    std::string line;
    while (std::getline(f, line)) {
        if (!line.empty() && line[0] != '#') return line;
    }
    return {};
}

RunConfig simulate_config(const fs::path& out) {
    RunConfig cfg;
    cfg.command = "simulate";
    cfg.model = "double_well_1d";
    cfg.M = 5000;
    cfg.seed = 7;
    cfg.out = out;
    return cfg;
}

}  // namespace

TEST_CASE("CSV round trip is bit exact") {
    const auto dir = scratch_dir("roundtrip");
    const auto setup = example_setup(2, 1.0);
    const auto data = generate_pairs(setup.model, setup.sampler, 3000, 1e-3, RngStream(71));
    const auto path = dir / "pairs.csv";
    save_dataset(path, data, {{"note", "test"}});
    const auto back = read_dataset_csv(path);
    CHECK(back.Z == data.Z);
    CHECK(back.X == data.X);
    CHECK(back.h == data.h);
    CHECK(metadata_value(read_metadata(metadata_path(path)), "note") == "test");
    fs::remove_all(dir);
}

TEST_CASE("simulate is reproducible byte for byte") {
    const auto dir = scratch_dir("repro");
    std::ostringstream out, err;
    REQUIRE(cmd_simulate(simulate_config(dir / "a.csv"), out, err) == exit_ok);
    REQUIRE(cmd_simulate(simulate_config(dir / "b.csv"), out, err) == exit_ok);
    CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
    auto other = simulate_config(dir / "c.csv");
    other.seed = 8;
    REQUIRE(cmd_simulate(other, out, err) == exit_ok);
    CHECK(slurp(dir / "a.csv") != slurp(dir / "c.csv"));
    fs::remove_all(dir);
}

TEST_CASE("grid simulation writes the full lattice") {
    const auto dir = scratch_dir("grid");
    RunConfig cfg = simulate_config(dir / "lorenz.csv");
    cfg.model = "lorenz_3d";
    cfg.grid = {50, 50, 50};
    cfg.M.reset();
    std::ostringstream out, err;
    REQUIRE(cmd_simulate(cfg, out, err) == exit_ok);
    CHECK(out.str().find("M=125000") != std::string::npos);
    const auto data = read_dataset_csv(dir / "lorenz.csv");
    CHECK(data.M() == 125000);
    CHECK(data.n() == 3);

    cfg.model = "double_well_1d";
    cfg.grid.clear();
    cfg.out = dir / "one.csv";
    cfg.M = 10;
    REQUIRE(cmd_simulate(cfg, out, err) == exit_ok);
    CHECK(first_data_header(dir / "one.csv").rfind("z1,x1", 0) == 0);
    fs::remove_all(dir);
}

TEST_CASE("missing input is an I/O failure naming the path") {
    RunConfig cfg;
    cfg.command = "identify";
    cfg.in = fs::temp_directory_path() / "levyid_no_such_file.csv";
    std::ostringstream out, err;
    CHECK(run_command(cfg, out, err) == exit_io_failure);
    CHECK(err.str().find("levyid_no_such_file.csv") != std::string::npos);
}

TEST_CASE("estimate warns when epsilon is not far above h") {
    CHECK(epsilon_step_warning(0.05, 1e-3).find("epsilon should greatly exceed h") != std::string::npos);
    CHECK(epsilon_step_warning(1.0, 1e-3).empty());

    const auto dir = scratch_dir("estimate");
    auto sim = simulate_config(dir / "d.csv");
    sim.M = 20000;
    std::ostringstream out, err;
    REQUIRE(cmd_simulate(sim, out, err) == exit_ok);
    RunConfig est;
    est.command = "estimate";
    est.in = dir / "d.csv";
    est.annulus.epsilon = 0.05;
    est.out_dir = dir;
    std::ostringstream out2, err2;
    CHECK(run_command(est, out2, err2) == exit_ok);
    CHECK(err2.str().find("epsilon should greatly exceed h") != std::string::npos);
    CHECK(out2.str().find("alpha_hat=") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("identify writes a complete report") {
    const auto dir = scratch_dir("identify");
    auto sim = simulate_config(dir / "d.csv");
    sim.M = 100000;
    std::ostringstream out, err;
    REQUIRE(cmd_simulate(sim, out, err) == exit_ok);
    RunConfig id;
    id.command = "identify";
    id.in = dir / "d.csv";
    id.degree = 3;
    id.out_dir = dir;
    std::ostringstream out2, err2;
    REQUIRE(run_command(id, out2, err2) == exit_ok);
    CHECK(out2.str().find("b1:") != std::string::npos);
    CHECK(out2.str().find("a11:") != std::string::npos);

    fs::path json_file;
    for (const auto& e : fs::directory_iterator(dir)) {
        if (e.path().string().ends_with("_report.json")) json_file = e.path();
    }
    REQUIRE_FALSE(json_file.empty());
    const auto doc = nlohmann::json::parse(slurp(json_file));
    for (const char* key : {"alpha_hat", "sigma_hat", "basis", "drift", "diffusion", "diagnostics", "config"}) {
        CAPTURE(key);
        CHECK(doc.contains(key));
    }
    fs::remove_all(dir);
}

TEST_CASE("count and list parsing") {
    CHECK(parse_count("1e6") == 1'000'000);
    CHECK(parse_count("1000000") == 1'000'000);
    CHECK_THROWS_AS(parse_count("1.5"), ConfigError);
    CHECK_THROWS_AS(parse_count("-3"), ConfigError);
    CHECK_THROWS_AS(parse_count("ten"), ConfigError);
    CHECK(parse_count_list("100,100,100") == std::vector<std::size_t>{100, 100, 100});
    CHECK(parse_double_list("0.1,1") == std::vector<double>{0.1, 1.0});
}

TEST_CASE("invalid configuration exits with code 2") {
    RunConfig cfg;
    cfg.command = "simulate";
    cfg.out = fs::temp_directory_path() / "levyid_unused.csv";
    std::ostringstream out, err;
    cfg.h = -1.0;
    CHECK(run_command(cfg, out, err) == exit_io_failure);
    cfg.h = 1e-3;
    cfg.alpha = 2.5;
    CHECK(run_command(cfg, out, err) == exit_io_failure);
    cfg.alpha = 1.0;
    cfg.model = "no_such_model";
    CHECK(run_command(cfg, out, err) == exit_io_failure);
    CHECK_FALSE(fs::exists(*cfg.out));
}

TEST_CASE("published reference values") {
    const auto& t1 = reference_table(1);
    CHECK(t1.alpha_hat[1] == 0.9987);
    CHECK(t1.sigma_hat[1] == 2.0068);
    CHECK(ReferenceTable::column(1.0) == 1u);
    CHECK_FALSE(ReferenceTable::column(0.7).has_value());
    CHECK(reference_table(2).value("a12", 1, 1).has_value());
    CHECK_FALSE(reference_table(2).value("a12", 0, 1).has_value());
    CHECK_THROWS(reference_table(5));
}

TEST_CASE("relative L2 error") {
    auto g = [](double x) { return x; };
    CHECK(relative_l2_error(g, g, 0.0, 1.0) == 0.0);
    CHECK(relative_l2_error([](double x) { return 1.1 * x; }, g, 0.0, 1.0) == doctest::Approx(0.1));
    // ||sin|| on [0, pi] is sqrt(pi / 2); the zero function is 100% off.
    CHECK(relative_l2_error([](double) { return 0.0; }, [](double x) { return std::sin(x); }, 0.0, std::numbers::pi) ==
          doctest::Approx(1.0));
    CHECK_THROWS(relative_l2_error(g, [](double) { return 0.0; }, 0.0, 1.0));
}
