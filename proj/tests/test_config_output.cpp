#include <doctest.h>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <stdexcept>

#include "ite/commands.hpp"
#include "ite/config.hpp"
#include "ite/output.hpp"

using namespace ite;

TEST_CASE("config parsing") {
    const auto c = Config::parse(
        "# comment\n"
        "n = 100   # trailing comment\n"
        "\n"
        "  name=hello  \n"
        "list = 1, 2.5 ,3e-1\n"
        "empty =\n"
        "flag = true\n"
        "n = 200\n");
    CHECK(c.get_uint("n") == 200);
    CHECK(c.get_string("name") == "hello");
    CHECK(c.get_list("list") == std::vector<double>{1.0, 2.5, 0.3});
    CHECK(c.get_list("empty").empty());
    CHECK(c.get_bool("flag"));
    CHECK(Config::parse(c.to_text()).values() == c.values());
}

TEST_CASE("config errors") {
    CHECK_THROWS_AS(Config::parse("no equals sign\n"), ConfigError);
    CHECK_THROWS_AS(Config::parse("= 3\n"), ConfigError);
    const auto c = Config::parse("x = abc\nneg = -2\nfrac = 1.5\nzero = 0\nb = maybe\nl = 1,,2\n");
    CHECK_THROWS_AS(c.get_double("x"), ConfigError);
    CHECK_THROWS_AS(c.get_double("missing"), ConfigError);
    CHECK_THROWS_AS(c.get_positive("neg"), ConfigError);
    CHECK_THROWS_AS(c.get_positive("zero"), ConfigError);
    CHECK_THROWS_AS(c.get_uint("neg"), ConfigError);
    CHECK_THROWS_AS(c.get_uint("frac"), ConfigError);
    CHECK_THROWS_AS(c.get_bool("b"), ConfigError);
    CHECK_THROWS_AS(c.get_list("l"), ConfigError);
    CHECK_THROWS_AS(Config::load("/nonexistent/dir/file.cfg"), ConfigError);
}

TEST_CASE("numbers round-trip through their CSV form") {
    for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 100000.0, 1e15, 7.384579039760769e23}) {
        const std::string s = format_number(x);
        double back = 0.0;
        std::from_chars(s.data(), s.data() + s.size(), back);
        CHECK(back == x);
    }
    CHECK(format_number(100000.0) == "100000");
    CHECK(format_number(-0.0) == "0");
    CHECK(format_number(0.5) == "0.5");
}

TEST_CASE("csv table") {
    CsvTable t({"a", "b"});
    CHECK(t.to_string() == "a,b\n");
    t.add_row({1.0, 0.25});
    t.add_row(std::vector<std::string>{"x", "y"});
    CHECK(t.to_string() == "a,b\n1,0.25\nx,y\n");
    CHECK(t.rows() == 2);
    CHECK_THROWS_AS(t.add_row({1.0}), std::invalid_argument);
}

TEST_CASE("checksum") {
    CHECK(checksum("123456789") == "cbf43926");
    CHECK(checksum("") == "00000000");
}

TEST_CASE("manifest fields") {
    const auto m = make_manifest("bounds icecube", {{"volume_cm3", "10"}}, {{"out.csv", "deadbeef"}});
    CHECK(m.at("tool") == "itesim");
    CHECK(m.at("command") == "bounds icecube");
    CHECK(m.at("config").at("volume_cm3") == "10");
    CHECK(m.at("outputs").at("out.csv") == "deadbeef");
    CHECK(m.contains("version"));
    CHECK(m.at("timestamp").get<std::string>().back() == 'Z');
}

TEST_CASE("write_text_file reports unwritable paths") {
    CHECK_THROWS_AS(write_text_file("/nonexistent-dir/x.csv", "a\n"), IoError);
}

TEST_CASE("command table is complete and consistent") {
    const std::set<std::string> expected{"capacitor write", "capacitor erase", "capacitor mi-curve",
                                         "doublewell relax", "doublewell escape", "doublewell heated",
                                         "bounds brillouin", "bounds anderson", "bounds icecube",
                                         "info eval", "verify"};
    std::set<std::string> names;
    for (const auto& spec : command_table()) {
        names.insert(spec.full_name());
        CHECK_FALSE(spec.csv_header.empty());
        std::set<std::string> keys;
        for (const auto& k : spec.keys) CHECK(keys.insert(k.name).second);
    }
    CHECK(names == expected);
    CHECK(find_command("bounds", "icecube") != nullptr);
    CHECK(find_command("bounds", "nope") == nullptr);
}

TEST_CASE("config resolution order and unknown keys") {
    const auto* spec = find_command("bounds", "brillouin");
    REQUIRE(spec);
    const auto file = Config::parse("temperature_K = 77\np_e = 0.1\n");
    const auto r = resolve_config(*spec, file, {{"p_e", "0.2"}});
    CHECK(r.get_double("temperature_K") == 77.0);
    CHECK(r.get_string("p_e") == "0.2");
    CHECK(resolve_config(*spec, Config{}, {}).get_string("temperature_K") == "300");
    CHECK_THROWS_AS(resolve_config(*spec, Config::parse("bogus = 1\n"), {}), ConfigError);
    CHECK_THROWS_AS(resolve_config(*spec, Config{}, {{"bogus", "1"}}), ConfigError);
}

TEST_CASE("closed-form commands") {
    const auto* spec = find_command("bounds", "brillouin");
    const auto out = run_command(*spec, resolve_config(*spec, Config{}, {{"p_e", "0.5"}}));
    REQUIRE(out.table.rows() == 1);
    CHECK(out.table.to_string().rfind("p_e,E_joule,E_kT\n0.5,", 0) == 0);

    const auto* info = find_command("info", "eval");
    CHECK_THROWS_AS(run_command(*info, resolve_config(*info, Config{}, {{"p_e", "1.5"}})), ConfigError);

    const auto* ice = find_command("bounds", "icecube");
    const auto cold = resolve_config(*ice, Config{}, {{"ambient_K", "250"}});
    CHECK_THROWS(run_command(*ice, cold));
}

TEST_CASE("an empty grid gives a header-only table") {
    const auto* spec = find_command("capacitor", "erase");
    const auto out = run_command(*spec, resolve_config(*spec, Config{}, {{"u0_sigma", ""}, {"n", "10"}}));
    CHECK(out.table.rows() == 0);
    CHECK(out.table.to_string() == "u0_sigma,duration_tau,n,mean_Q_env_kT,se_Q_env_kT,theory_Q_env_kT\n");
}

TEST_CASE("stochastic commands are seed-reproducible") {
    const auto* spec = find_command("capacitor", "mi-curve");
    const std::map<std::string, std::string> small{{"n", "300"}, {"durations_tau", "0,1,5"}};
    const auto a = run_command(*spec, resolve_config(*spec, Config{}, small));
    const auto b = run_command(*spec, resolve_config(*spec, Config{}, small));
    CHECK(a.table.to_string() == b.table.to_string());
    auto other = small;
    other["seed"] = "43";
    CHECK(run_command(*spec, resolve_config(*spec, Config{}, other)).table.to_string() != a.table.to_string());
}

TEST_CASE("manifest replay") {
    const auto* spec = find_command("capacitor", "erase");
    const auto cfg = resolve_config(*spec, Config{}, {{"n", "500"}, {"u0_sigma", "1"}});
    const auto out = run_command(*spec, cfg);
    auto m = make_manifest(spec->full_name(), cfg.values(), {{"erase.csv", checksum(out.table.to_string())}});
    CHECK(replay_manifest(m).matches);
    m["config"]["seed"] = "7";
    CHECK_FALSE(replay_manifest(m).matches);
    m["command"] = "capacitor explode";
    CHECK_THROWS_AS(replay_manifest(m), ConfigError);
}
