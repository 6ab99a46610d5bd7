#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

#include "forge/blocks.hpp"
#include "forge/formats.hpp"
#include "oracles.hpp"

using namespace forge;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code = -1;
    std::string out;
};

Result forge_cli(const std::string& args) {
    std::string cmd = std::string(FORGE_BIN) + " " + args + " 2>&1";
    Result r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p);
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

struct Workdir {
    fs::path path;
    Workdir() {
        path = fs::temp_directory_path() / ("forge-cli-" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
        put("halt.tm", format_tm(oracle::halting_machine()));
        put("halt.cfg", format_config(oracle::blank(), oracle::halting_machine()));
        put("fixture.lib", format_block_library(oracle::ether_fixture()));
        put("grower.rtm", "forge-rtm 1\nstates q1\nq1 A -> BB q1\nq1 B -> A q1\n");
    }
    ~Workdir() { fs::remove_all(path); }
    std::string at(const std::string& name) const { return (path / name).string(); }
    void put(const std::string& name, const std::string& text) const { std::ofstream(path / name) << text; }
    std::string get(const std::string& name) const {
        std::ifstream in(path / name, std::ios::binary);
        std::ostringstream os;
        os << in.rdbuf();
        return os.str();
    }
};

}  // namespace

TEST_CASE("usage errors exit with 1 and help with 0") {
    CHECK(forge_cli("--help").code == 0);
    CHECK(forge_cli("").code == 1);
    CHECK(forge_cli("frobnicate").code == 1);
    CHECK(forge_cli("run").code == 1);
    auto help = forge_cli("pipeline --help");
    CHECK(help.code == 0);
    CHECK(help.out.find("--from") != std::string::npos);
    CHECK(help.out.find("--library") != std::string::npos);
}

TEST_CASE("input errors exit with 2") {
    Workdir w;
    CHECK(forge_cli("tm2tag " + w.at("nope.tm") + " --config " + w.at("halt.cfg")).code == 2);
    w.put("bad.tm", "forge-tm 9\n");
    auto r = forge_cli("tm2tag " + w.at("bad.tm") + " --config " + w.at("halt.cfg"));
    CHECK(r.code == 2);
    CHECK(r.out.find("version") != std::string::npos);
}

TEST_CASE("passes chain through files") {
    Workdir w;
    REQUIRE(forge_cli("tm2tag " + w.at("halt.tm") + " --config " + w.at("halt.cfg") + " -o " + w.at("halt.tag")).code == 0);
    CHECK(w.get("halt.tag").rfind("forge-tag 1", 0) == 0);
    REQUIRE(forge_cli("tag2cts " + w.at("halt.tag") + " -o " + w.at("halt.cts")).code == 0);
    auto cts = parse_cts(w.get("halt.cts"));
    CHECK(cts.phiSize == 18);
    CHECK(cts.sys.appendants.size() == 54);
    REQUIRE(forge_cli("ctsnorm " + w.at("halt.cts") + " -o " + w.at("norm.cts")).code == 0);
    CHECK(parse_cts(w.get("norm.cts")).sys.appendants.size() == 324);
    auto r = forge_cli("cts2r110 " + w.at("halt.cts") + " --library " + w.at("fixture.lib") + " -o " + w.at("halt.state"));
    CHECK(r.code == 0);
    CHECK(w.get("halt.state").rfind("forge-state 1", 0) == 0);
    auto run = forge_cli("run " + w.at("halt.state") + " --steps 50 --detect-halt --temporal");
    CHECK(run.code == 0);
    CHECK(run.out.find("halted no") != std::string::npos);
}

TEST_CASE("pipeline manifest for a one-state one-symbol machine") {
    Workdir w;
    auto r = forge_cli("pipeline " + w.at("halt.tm") + " --config " + w.at("halt.cfg") + " --library " +
                       w.at("fixture.lib") + " -o " + w.at("a.state"));
    REQUIRE(r.code == 0);
    auto m = nlohmann::json::parse(w.get("a.state.json"));
    CHECK(m["format"] == "forge-manifest 1");
    CHECK(m["tag"]["s"] == 3);
    CHECK(m["tag"]["alphabet"] == 13);
    CHECK(m["cts"]["phi"] == 18);
    CHECK(m["cts_system"]["appendants"] == 54);
    CHECK(m["rule110"]["left_passes"] == 3);
    CHECK(m["rule110"]["center_cells"].get<std::size_t>() > 0);

    // same inputs, same bytes
    REQUIRE(forge_cli("pipeline " + w.at("halt.tm") + " --config " + w.at("halt.cfg") + " --library " +
                      w.at("fixture.lib") + " -o " + w.at("b.state"))
                .code == 0);
    CHECK(w.get("a.state") == w.get("b.state"));
    CHECK(w.get("a.state.json") == w.get("b.state.json"));
}

TEST_CASE("pipeline can start at the cyclic tag level") {
    Workdir w;
    w.put("s.cts", "forge-cts 1\ntape Y\nYNNNNN\n-\nNNNNNN\n-\n");
    auto r = forge_cli("pipeline " + w.at("s.cts") + " --from cts --library " + w.at("fixture.lib") + " -o " +
                       w.at("s.state") + " --manifest " + w.at("s.json"));
    REQUIRE(r.code == 0);
    auto m = nlohmann::json::parse(w.get("s.json"));
    CHECK(m["from"] == "cts");
    CHECK_FALSE(m.contains("tm"));
    CHECK_FALSE(m.contains("tag"));
    CHECK(m["rule110"]["v"] == 1162);
}

TEST_CASE("errors name the failing pass") {
    Workdir w;
    w.put("e.cts", "forge-cts 1\ntape Y\n-\nYNNNNN\n");
    auto r = forge_cli("pipeline " + w.at("e.cts") + " --from cts --library " + w.at("fixture.lib"));
    CHECK(r.code == 2);
    CHECK(r.out.find("cts2r110") != std::string::npos);

    auto missing = forge_cli("pipeline " + w.at("halt.tm") + " --config " + w.at("halt.cfg") + " --library " +
                             w.at("nothing.lib"));
    CHECK(missing.code == 2);
    CHECK(missing.out.find("nothing.lib") != std::string::npos);
}

TEST_CASE("block library checker") {
    Workdir w;
    auto ok = forge_cli("blocks " + w.at("fixture.lib"));
    CHECK(ok.code == 0);
    CHECK(ok.out.find("valid") != std::string::npos);
    auto lib = oracle::ether_fixture();
    lib.blocks['E'].rows[4][10] ^= 1;
    w.put("bad.lib", format_block_library(lib));
    CHECK(forge_cli("blocks " + w.at("bad.lib")).code == 3);
}

TEST_CASE("emulators and rendering") {
    Workdir w;
    auto r = forge_cli("emulate tm7x2 --rows 100 --check");
    CHECK(r.code == 0);
    CHECK(r.out.find("100 rows match") != std::string::npos);
    w.put("ether.state", format_state(r110::ether_state(28)));
    REQUIRE(forge_cli("run " + w.at("ether.state") + " --steps 14 --render " + w.at("e.pbm") + " --window 0:28").code == 0);
    auto pic = r110::parse_p1(w.get("e.pbm"));
    CHECK(pic.rows.size() == 15);
    CHECK(pic.rows[0].size() == 28);
    CHECK(pic.rows[7] == pic.rows[0]);
}

TEST_CASE("polynomial construction from the command line") {
    Workdir w;
    auto r = forge_cli("nw " + w.at("grower.rtm") + " --tape ABA --tm-steps 2 --passes");
    REQUIRE(r.code == 0);
    CHECK(r.out.find("stage 2: H h A A U u U u U u U u B B A A") != std::string::npos);
    CHECK(r.out.find("Q A a B b B b U u U u U u U u") != std::string::npos);
    auto p = forge_cli("nw " + w.at("grower.rtm") + " --tape ABA --tm-steps 3 --profile");
    CHECK(p.code == 0);
    CHECK(p.out.rfind("tm_step,tape_length,counter,cycles,tag_steps\n", 0) == 0);
}

TEST_CASE("xcheck suite with a JUnit report") {
    Workdir w;
    fs::create_directories(w.path / "suite");
    w.put("suite/halt.tm", format_tm(oracle::halting_machine()));
    w.put("suite/halt.cfg", format_config(oracle::blank(), oracle::halting_machine()));
    w.put("suite/loop.tm", format_tm(oracle::looping_machine()));
    w.put("suite/loop.cfg", format_config(oracle::blank(), oracle::looping_machine()));
    w.put("suite/loop.expect", "loops\n");
    auto r = forge_cli("xcheck --suite " + w.at("suite") + " --junit " + w.at("report.xml") + " --library " +
                       w.at("fixture.lib") + " --e2e-steps 1000");
    CHECK(r.code == 0);
    CHECK(r.out.find("loop e2e: pass") != std::string::npos);
    CHECK(w.get("report.xml").find("<testsuite") != std::string::npos);
    CHECK(forge_cli("xcheck --suite " + w.at("no-such-dir")).code == 2);
}
