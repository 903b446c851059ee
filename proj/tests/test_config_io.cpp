#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>

#include "doctest.h"
#include "kgd/config.hpp"
#include "kgd/io.hpp"

namespace fs = std::filesystem;

namespace {

std::string message_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const std::exception& err) {
        return err.what();
    }
    return "";
}

fs::path temp_file(const char* name) {
    fs::path dir = fs::temp_directory_path() / "kgd_io_tests";
    fs::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_CASE("minimal config picks up every default") {
    kgd::SimConfig c = kgd::parse_config("psi0_mode = 0:1\n");
    CHECK(c.dim == 1);
    CHECK(c.n == 64);
    CHECK(c.dt == 0.005);
    CHECK(c.t_final == 50.0);
    CHECK(c.p == 2.0);
    CHECK(c.damped);
    CHECK_FALSE(c.dealias);
    CHECK_FALSE(c.linear);
    CHECK(c.eps == 0.1);
    CHECK(c.observe_stride == 20);
    CHECK(c.amplitude == 1.0);
    CHECK_FALSE(c.emit_plots);
    CHECK(c.output_dir == "out");
    CHECK(c.psi0_modes.size() == 1);
    CHECK(c.psi0_modes[0].k == std::vector<int>{0});
    CHECK(c.psi0_modes[0].re == 1.0);
}

TEST_CASE("comments, blank lines and repeated mode keys") {
    const char* text =
        "# experiment\n"
        "\n"
        "dim = 2\n"
        "n = 16\t # small\n"
        "psi0_mode = 1,0:0.5\n"
        "psi0_mode = -1,0:0.5\n"
        "v0_mode = 0,1:0,-1.5\n";
    kgd::SimConfig c = kgd::parse_config(text);
    CHECK(c.dim == 2);
    CHECK(c.n == 16);
    CHECK(c.psi0_modes.size() == 2);
    CHECK(c.psi0_modes[1].k == std::vector<int>{-1, 0});
    CHECK(c.v0_modes[0].im == -1.5);
}

TEST_CASE("preset implies the dimension") {
    kgd::SimConfig c = kgd::parse_config("preset = fig2_left\n");
    CHECK(c.dim == 2);
    CHECK(kgd::preset_dim("fig1_right") == 1);
    CHECK_THROWS_AS(kgd::preset_dim("fig9"), kgd::ConfigError);

    // explicit dim that contradicts the preset is refused
    CHECK_THROWS_AS(kgd::parse_config("preset = fig2_left\ndim = 1\n"), kgd::ConfigError);
}

TEST_CASE("parse errors carry line numbers") {
    std::string msg = message_of([] { kgd::parse_config("n = 64\nwhat\n"); });
    CHECK(msg.find("line 2") != std::string::npos);

    msg = message_of([] { kgd::parse_config("n = 64\n\ndamped = maybe\n"); });
    CHECK(msg.find("line 3") != std::string::npos);

    msg = message_of([] { kgd::parse_config("dt =\n"); });
    CHECK(msg.find("line 1") != std::string::npos);

    msg = message_of([] { kgd::parse_config("unknown_key = 3\n"); });
    CHECK(msg.find("unknown key") != std::string::npos);

    msg = message_of([] { kgd::parse_config("psi0_mode = 1;0.5\n"); });
    CHECK(msg.find("line 1") != std::string::npos);

    msg = message_of([] { kgd::parse_config("preset = fig3_up\n"); });
    CHECK(msg.find("line 1") != std::string::npos);
    CHECK(msg.find("fig3_up") != std::string::npos);
}

TEST_CASE("validation rules") {
    CHECK_THROWS_AS(kgd::parse_config("psi0_mode = 0:1\nn = 48\n"), kgd::ConfigError);
    CHECK_THROWS_AS(kgd::parse_config("psi0_mode = 0:1\neps = 1.5\n"), kgd::ConfigError);
    CHECK_THROWS_AS(kgd::parse_config("psi0_mode = 0:1\nobserve_stride = 0\n"),
                    kgd::ConfigError);
    CHECK_THROWS_AS(kgd::parse_config("psi0_mode = 0:1\ndt = -1\n"), kgd::ConfigError);
    CHECK_THROWS_AS(kgd::parse_config(""), kgd::ConfigError);  // no initial data
    CHECK_THROWS_AS(kgd::parse_config("preset = fig1_left\npsi0_mode = 0:1\n"),
                    kgd::ConfigError);
    // |k| must stay below n/2
    CHECK_THROWS_AS(kgd::parse_config("n = 8\npsi0_mode = 4:1\n"), kgd::ConfigError);
    // wavevector arity must match dim
    CHECK_THROWS_AS(kgd::parse_config("dim = 2\nn = 16\npsi0_mode = 1:1\n"), kgd::ConfigError);
    CHECK_THROWS_AS(kgd::parse_config("psi0_mode = 1,1:1\n"), kgd::ConfigError);
}

TEST_CASE("render and parse round trip") {
    kgd::SimConfig a = kgd::parse_config(
        "dim = 2\nn = 32\ndt = 0.00125\nt_final = 3.75\np = 3.5\ndamped = false\n"
        "dealias = true\nlinear = false\neps = 0.25\nobserve_stride = 7\n"
        "amplitude = -1.25\nemit_plots = true\noutput_dir = out/run a\n"
        "psi0_mode = 3,-2:0.125,-0.5\nv0_mode = 0,1:2\n");
    kgd::SimConfig b = kgd::parse_config(kgd::render_config(a));
    CHECK(a == b);

    kgd::SimConfig p = kgd::parse_config("preset = fig1_right\nemit_plots = true\n");
    CHECK(kgd::parse_config(kgd::render_config(p)) == p);
}

TEST_CASE("series csv round trips bitwise") {
    std::vector<kgd::EnergyRecord> records(3);
    records[0] = {1, 0.005, 39.1875, 1e-300, 29.0, 41.5, 38.9, 10.5, 0.125};
    records[1] = {21, 0.105, 1.7976931348623157e308, 4.9406564584124654e-324, 0.1,
                  -0.0,  3.0,   0.0,                    1e-17};
    records[2] = {10000, 50.0, 0.1, 0.2, 0.30000000000000004, 7.0, 2.5, 1.0, 0.0};

    fs::path path = temp_file("series_rt.csv");
    kgd::write_series_csv(path.string(), records);
    std::vector<kgd::EnergyRecord> back = kgd::read_series_csv(path.string());

    REQUIRE(back.size() == records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        CHECK(back[i].step == records[i].step);
        CHECK(back[i].t == records[i].t);
        CHECK(back[i].e_psi == records[i].e_psi);
        CHECK(back[i].e_phi == records[i].e_phi);
        CHECK(back[i].q == records[i].q);
        CHECK(back[i].j == records[i].j);
        CHECK(back[i].e_eps == records[i].e_eps);
        CHECK(back[i].h2 == records[i].h2);
        CHECK(back[i].gap == records[i].gap);
    }

    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == std::string(kgd::kSeriesHeader));
}

TEST_CASE("series csv reader rejects malformed input") {
    fs::path path = temp_file("series_bad.csv");
    {
        std::ofstream out(path);
        out << "step,t,e_psi\n1,2,3\n";
    }
    std::string msg = message_of([&] { kgd::read_series_csv(path.string()); });
    CHECK(msg.find("header") != std::string::npos);

    {
        std::ofstream out(path);
        out << kgd::kSeriesHeader << "\n1,2,3\n";
    }
    msg = message_of([&] { kgd::read_series_csv(path.string()); });
    CHECK(msg.find(":2:") != std::string::npos);

    {
        std::ofstream out(path);
        out << kgd::kSeriesHeader << "\n1,2,3,4,5,6,7,8,oops\n";
    }
    msg = message_of([&] { kgd::read_series_csv(path.string()); });
    CHECK(msg.find("oops") != std::string::npos);

    CHECK_THROWS(kgd::read_series_csv("/nonexistent/dir/file.csv"));
    CHECK_THROWS(kgd::write_series_csv("/nonexistent/dir/file.csv", {}));
}

TEST_CASE("fit report stanzas") {
    kgd::FitReportEntry good;
    good.name = "e_phi";
    good.ok = true;
    good.fit.alpha = 1.002;
    good.fit.c = 5.5;
    good.fit.r2 = 0.9991;
    good.fit.window_lo = 25.0;
    good.fit.window_hi = 50.0;
    kgd::FitReportEntry bad;
    bad.name = "gap";
    bad.error = "too few samples";

    fs::path path = temp_file("fit.txt");
    kgd::write_fit_report(path.string(), {good, bad});

    std::ifstream in(path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(text.find("[e_phi]") != std::string::npos);
    CHECK(text.find("alpha = 1.002") != std::string::npos);
    CHECK(text.find("window = 25,50") != std::string::npos);
    CHECK(text.find("[gap]") != std::string::npos);
    CHECK(text.find("error = too few samples") != std::string::npos);
}

TEST_CASE("svg writer emits both panels and survives zero values") {
    std::vector<kgd::EnergyRecord> records;
    for (int i = 0; i <= 40; ++i) {
        kgd::EnergyRecord r;
        r.step = i + 1;
        r.t = 0.1 * (i + 1);
        r.e_psi = 40.0 - 0.1 * i;
        r.q = 39.0;
        r.e_phi = i < 30 ? std::exp(-r.t) : 0.0;  // hits zero, must not crash
        records.push_back(r);
    }
    fs::path path = temp_file("plot.svg");
    kgd::write_series_svg(path.string(), records);

    std::ifstream in(path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(text.find("<svg") != std::string::npos);
    CHECK(text.find("polyline") != std::string::npos);
    CHECK(text.find("log scale") != std::string::npos);

    kgd::write_series_svg(temp_file("empty.svg").string(), {});
}
