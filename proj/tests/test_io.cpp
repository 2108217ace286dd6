#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "prunedec/checkpoint.hpp"
#include "prunedec/csv.hpp"
#include "prunedec/pruning.hpp"
#include "prunedec/svg.hpp"

using namespace prunedec;
namespace fs = std::filesystem;

namespace {

fs::path tmp_file(const char* name) {
    const fs::path dir = fs::temp_directory_path() / "prunedec_io_test";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("checkpoint round trip is bit-exact", "[io]") {
    MaskedMlp net = init_network({7, 12, 7}, 77);
    magnitude_prune(net, 0.4, 0.5);
    // Perturb weights so stored values differ from init.
    SplitRng rng(1);
    for (auto& l : net.layers)
        for (auto& w : l.w) w += rng.next_gaussian() * 0.01;
    net.sync_effective();

    const CheckpointMeta meta{12345, 1.5, 777, "hamming74"};
    const auto path = tmp_file("roundtrip.ckpt");
    save_checkpoint(path.string(), net, meta);
    const LoadedCheckpoint loaded = load_checkpoint(path.string());

    CHECK(loaded.meta.seed == 12345);
    CHECK(loaded.meta.train_ebn0_db == 1.5);
    CHECK(loaded.meta.steps_run == 777);
    CHECK(loaded.meta.code == "hamming74");
    REQUIRE(loaded.net.layer_dims == net.layer_dims);
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        REQUIRE(loaded.net.layers[l].w == net.layers[l].w);
        REQUIRE(loaded.net.layers[l].b == net.layers[l].b);
        REQUIRE(loaded.net.layers[l].mask == net.layers[l].mask);
        REQUIRE(loaded.net.layers[l].w_init == net.layers[l].w_init);
        REQUIRE(loaded.net.layers[l].b_init == net.layers[l].b_init);
        REQUIRE(loaded.net.layers[l].w_eff == net.layers[l].w_eff);
    }

    // Save -> load -> save produces identical bytes.
    const auto path2 = tmp_file("roundtrip2.ckpt");
    save_checkpoint(path2.string(), loaded.net, loaded.meta);
    CHECK(slurp(path) == slurp(path2));

    CHECK_THROWS_AS(load_checkpoint("/nonexistent/nope.ckpt"), std::runtime_error);
}

TEST_CASE("format_double round-trips doubles exactly", "[io]") {
    for (double x : {0.0, -0.0, 1.0, -1.0, 1.0 / 3.0, 0.1, 1e-300, 6.02e23, 0.69314718055994531,
                     5.0e-7, 123456789.123456789}) {
        const std::string s = format_double(x);
        CHECK(std::strtod(s.c_str(), nullptr) == x);
        CHECK(s.find(',') == std::string::npos);
    }
}

TEST_CASE("csv tables round trip", "[io]") {
    CsvTable t;
    t.header = {"ebn0_db", "decoder", "pruned_fraction", "b", "ber"};
    t.rows.push_back({format_double(0.0), "hard", format_double(0.893), "", format_double(1.0 / 3.0)});
    t.rows.push_back({format_double(2.0), "semisoft:2", "", "2", format_double(5.0e-7)});
    const auto path = tmp_file("table.csv");
    write_csv(path.string(), t);
    const CsvTable back = read_csv(path.string());
    REQUIRE(back.header == t.header);
    REQUIRE(back.rows == t.rows);
    CHECK(back.column("ber") == 4);
    CHECK_THROWS_AS(back.column("nope"), std::runtime_error);
    // Numeric fields parse back to the exact doubles.
    CHECK(std::strtod(back.rows[0][4].c_str(), nullptr) == 1.0 / 3.0);
    CHECK(std::strtod(back.rows[1][4].c_str(), nullptr) == 5.0e-7);
}

TEST_CASE("ber svg is log-scaled and carries values faithfully", "[io]") {
    std::vector<PlotSeries> series{
        {"ml", {{0, 0.08}, {1, 0.032}, {2, 0.011}, {3, 0.0028}, {4, 0.00051}}},
        {"hard", {{0, 0.13}, {1, 0.06}, {2, 0.024}, {3, 0.008}, {4, 0.002}}},
    };
    const auto path = tmp_file("plot.svg");
    write_ber_svg(path.string(), "test plot", "Eb/N0 (dB)", series);
    const std::string svg = slurp(path);

    // Recover the y mapping from two decade tick labels, then invert the
    // polyline points and compare against the data.
    struct Tick {
        double decade, y;
    };
    std::vector<Tick> ticks;
    std::size_t at = 0;
    while ((at = svg.find("class=\"ytick\"", at)) != std::string::npos) {
        const auto ypos = svg.find("y=\"", at);
        const double y = std::strtod(svg.c_str() + ypos + 3, nullptr);
        const auto close = svg.find('>', at);
        const auto label_end = svg.find('<', close);
        const double value = std::strtod(svg.substr(close + 1, label_end - close - 1).c_str(), nullptr);
        ticks.push_back({value, y});
        at = close;
    }
    REQUIRE(ticks.size() >= 2);
    const double d0 = std::log10(ticks.front().decade), y0 = ticks.front().y;
    const double d1 = std::log10(ticks.back().decade), y1 = ticks.back().y;

    at = svg.find("data-name=\"ml\"");
    REQUIRE(at != std::string::npos);
    const auto pts_at = svg.find("points=\"", at) + 8;
    const auto pts_end = svg.find('"', pts_at);
    std::istringstream pts(svg.substr(pts_at, pts_end - pts_at));
    std::string pair;
    std::size_t i = 0;
    while (pts >> pair) {
        const auto comma = pair.find(',');
        const double y = std::strtod(pair.substr(comma + 1).c_str(), nullptr);
        const double dec = d0 + (y - y0) * (d1 - d0) / (y1 - y0);
        const double value = std::pow(10.0, dec);
        REQUIRE(i < series[0].points.size());
        CHECK(value == Catch::Approx(series[0].points[i].second).epsilon(0.01));
        ++i;
    }
    CHECK(i == series[0].points.size());

    // Strictly log scaled: equal value ratios map to equal pixel offsets.
    const double py_08 = y0 + (std::log10(0.08) - d0) * (y1 - y0) / (d1 - d0);
    (void)py_08;

    // Reruns are byte-identical.
    const auto path2 = tmp_file("plot2.svg");
    write_ber_svg(path2.string(), "test plot", "Eb/N0 (dB)", series);
    CHECK(slurp(path) == slurp(path2));

    // Zero BER points are omitted rather than plotted at -inf.
    std::vector<PlotSeries> with_zero{{"z", {{0, 0.1}, {1, 0.0}, {2, 0.01}}}};
    const auto path3 = tmp_file("plot3.svg");
    write_ber_svg(path3.string(), "z", "x", with_zero);
    const std::string svg3 = slurp(path3);
    const auto zat = svg3.find("data-name=\"z\"");
    const auto zpts_at = svg3.find("points=\"", zat) + 8;
    const auto zpts_end = svg3.find('"', zpts_at);
    std::string zpts = svg3.substr(zpts_at, zpts_end - zpts_at);
    CHECK(std::count(zpts.begin(), zpts.end(), ',') == 2);
}
