#include "efrac/cli.hpp"

#include <json.hpp>
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = efrac::run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

struct TempDir {
    fs::path path;
    TempDir() {
        std::random_device rd;
        path = fs::temp_directory_path() / ("efrac-cli-" + std::to_string(rd()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("enumerate") {
    auto r = run({"enumerate", "--max-n", "6"});
    CHECK(r.code == efrac::kExitOk);
    auto l = lines(r.out);
    CHECK(l.front() == "n,card");
    CHECK(l.back() == "6,52");
    CHECK(r.out.find('\r') == std::string::npos);
    CHECK(lines(run({"enumerate", "--max-n", "1"}).out).back() == "1,2");
    l = lines(run({"enumerate", "--max-n", "12"}).out);
    CHECK(l.back() == "12,1856");
    const auto j = run({"--format", "json", "enumerate", "--max-n", "2"});
    const auto last = nlohmann::json::parse(lines(j.out).back());
    CHECK(last["n"] == 2);
    CHECK(last["card"] == 4);
}

TEST_CASE("chain bound") {
    TempDir tmp;
    const std::string dir = tmp.path.string();
    auto r = run({"chain-bound", "--modulus", "1", "--cache-dir", dir});
    CHECK(r.code == 0);
    CHECK(lines(r.out).at(0) == "M,delta_num,delta_den,bound,bound_hp");
    CHECK(lines(r.out).at(1).rfind("1,1,1,0.69314719,", 0) == 0);
    r = run({"chain-bound", "--modulus", "5040", "--cache-dir", dir});
    CHECK(r.code == 0);
    CHECK(lines(r.out).at(1).rfind("5040,105,403,0.5673129", 0) == 0);
    CHECK(fs::exists(tmp.path / "chain-5040.csv"));
    CHECK(run({"chain-bound", "--modulus", "2^4*3^2*5*7", "--cache-dir", dir}).out == r.out);
    CHECK(run({"chain-bound", "--modulus", "lcm:7*12", "--cache-dir", dir}).out == r.out);
    const auto mixed = run({"mixed-bound", "--modulus", "5040", "--exact-modulus", "5040", "--cache-dir", dir});
    CHECK(mixed.code == 0);
    CHECK(lines(mixed.out).at(1) == "5040,5040," + lines(r.out).at(1).substr(5));
}

TEST_CASE("mixed bound arguments") {
    TempDir tmp;
    const auto r = run({"mixed-bound", "--modulus", "60", "--exact-modulus", "7", "--cache-dir", tmp.path.string()});
    CHECK(r.code == efrac::kExitUsage);
    CHECK(r.err.find("does not divide") != std::string::npos);
    const auto ok = run({"mixed-bound", "--modulus", "720", "--exact-modulus", "12", "--cache-dir", tmp.path.string()});
    CHECK(ok.code == 0);
    CHECK(fs::exists(tmp.path / "mixed-720-12.csv"));
    const auto sel = run({"mixed-bound", "--modulus", "720", "--exact-modulus", "12", "--selection", "div",
                          "--cache-dir", tmp.path.string()});
    CHECK(sel.code == 0);
    CHECK(run({"mixed-bound", "--modulus", "720", "--exact-modulus", "12", "--selection", "best"}).code ==
          efrac::kExitUsage);
}

TEST_CASE("figure data, density, gm table, set bound") {
    auto l = lines(run({"figure-data", "--max-n", "2"}).out);
    CHECK(l.at(1) == "1,2,0.693147180560,");
    CHECK(l.at(2).rfind("2,4,0.693147180560,0.480453013918", 0) == 0);
    l = lines(run({"density", "--modulus", "12", "--empirical-x", "8"}).out);
    CHECK(l.at(1).rfind("12,3,7,8,", 0) == 0);
    l = lines(run({"gm-table", "--max-m", "3"}).out);
    CHECK(l.back() == "3,6,11,true");
    l = lines(run({"set-bound", "--set", "1,2,3,6"}).out);
    CHECK(l.at(1).rfind("1 2 3 6,13,1,12,0.675843", 0) == 0);
    CHECK(run({"set-bound", "--set", "1,2,2"}).code == efrac::kExitUsage);
}

TEST_CASE("u-set") {
    auto r = run({"u-set", "--max", "1"});
    CHECK(r.code == 0);
    auto summary = nlohmann::json::parse(lines(r.out).back());
    CHECK(summary["summary"]["count"] == 1);
    r = run({"u-set", "--max-n", "100", "--cap", "20", "--recursive-y", "1", "--recursive-x", "100"});
    CHECK(r.code == 0);
    summary = nlohmann::json::parse(lines(r.out).back());
    CHECK(summary["summary"]["count"].get<int>() >= 26);
    CHECK(summary["summary"]["recursive_bound"] == 19);
    CHECK(run({"u-set", "--max", "10", "--cap", "99"}).code == efrac::kExitResource);
    CHECK(run({"u-set", "--max", "10", "--recursive-y", "1"}).code == efrac::kExitUsage);
    r = run({"u-set", "--max", "12", "--cap", "12", "--curve-k", "3"});
    CHECK(r.code == 0);
    CHECK(r.out.find(R"("n":7,"u_count":6,"card_lower_bound":"64")") != std::string::npos);
}

TEST_CASE("exit codes") {
    CHECK(run({}).code == efrac::kExitUsage);
    CHECK(run({"--help"}).code == efrac::kExitOk);
    CHECK(run({"frobnicate"}).code == efrac::kExitUsage);
    CHECK(run({"enumerate"}).code == efrac::kExitUsage);
    CHECK(run({"enumerate", "--max-n", "x"}).code == efrac::kExitUsage);
    CHECK(run({"chain-bound", "--modulus", "abc"}).code == efrac::kExitUsage);
    CHECK(run({"chain-bound", "--modulus", "0"}).code == efrac::kExitUsage);
    CHECK(run({"--precision", "16", "gm-table"}).code == efrac::kExitUsage);
    const auto r = run({"--memory-budget", "1M", "enumerate", "--max-n", "40"});
    CHECK(r.code == efrac::kExitResource);
    CHECK(r.err.find("N=") != std::string::npos);
}

TEST_CASE("runs are deterministic across worker counts") {
    TempDir tmp;
    const std::string dir = tmp.path.string();
    const auto a = run({"--workers", "1", "mixed-bound", "--modulus", "lcm:12", "--exact-modulus", "60", "--cache-dir", dir});
    const auto b = run({"--workers", "3", "mixed-bound", "--modulus", "lcm:12", "--exact-modulus", "60", "--cache-dir", dir});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    const auto c = run({"--workers", "2", "u-set", "--max", "200", "--cap", "20"});
    const auto d = run({"--workers", "1", "u-set", "--max", "200", "--cap", "20"});
    CHECK(c.out == d.out);
}

TEST_CASE("config file sits below flags") {
    TempDir tmp;
    const auto conf = tmp.path / "efrac.conf";
    std::ofstream(conf) << "format=json\ncache_dir=" << (tmp.path / "c").string() << "\n";
    ::setenv("EFRAC_CONFIG", conf.c_str(), 1);
    const auto from_file = run({"gm-table", "--max-m", "2"});
    const auto from_flag = run({"--format", "csv", "gm-table", "--max-m", "2"});
    std::ofstream(conf) << "colour=red\n";
    const auto broken = run({"gm-table", "--max-m", "2"});
    ::unsetenv("EFRAC_CONFIG");
    CHECK(from_file.out.front() == '{');
    CHECK(lines(from_flag.out).front() == "m,d_m,g_m,g_below_3_pow_m");
    CHECK(broken.code == efrac::kExitUsage);
}
