#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

// End-to-end tests driving the installed binary through std::system. Every
// invocation writes stdout to a scratch file so the tests can assert both
// the exit code and the exact bytes produced.

namespace {

namespace fs = std::filesystem;

int temp_counter = 0;

struct TempDir {
    fs::path dir;
    TempDir() {
        dir = fs::temp_directory_path() /
              ("ckhom_test_" + std::to_string(::getpid()) + "_" + std::to_string(temp_counter++));
        fs::create_directories(dir);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(dir, ec);
    }
    std::string file(const std::string& name, const std::string& content) const {
        fs::path p = dir / name;
        std::ofstream out(p);
        out << content;
        return p.string();
    }
    std::string path(const std::string& name) const { return (dir / name).string(); }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args, std::string* out_text = nullptr) {
    fs::path outfile = fs::temp_directory_path() /
                       ("ckhom_out_" + std::to_string(::getpid()) + "_" +
                        std::to_string(temp_counter++));
    std::string cmd =
        std::string(CKHOM_BIN) + " " + args + " >" + outfile.string() + " 2>/dev/null";
    int status = std::system(cmd.c_str());
    if (out_text) *out_text = read_file(outfile.string());
    std::error_code ec;
    fs::remove(outfile, ec);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const char* kC5 = "5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n";
const char* kK3 = "3 3\n0 1\n0 2\n1 2\n";

std::string path_graph_text(int n) {
    std::ostringstream os;
    os << n << ' ' << n - 1 << '\n';
    for (int i = 0; i + 1 < n; ++i) os << i << ' ' << i + 1 << '\n';
    return os.str();
}

}  // namespace

TEST_CASE("solve reports SAT with a verifiable coloring on the five-cycle") {
    TempDir td;
    std::string g = td.file("c5.graph", kC5);
    std::string out;
    REQUIRE(run_cli("solve " + g + " --k 5", &out) == 0);
    REQUIRE(out.rfind("SAT\n", 0) == 0);

    // round trip: the solver's own output must verify
    std::string col = td.file("c5.coloring", out);
    std::string vout;
    REQUIRE(run_cli("verify " + g + " " + col + " --k 5", &vout) == 0);
    REQUIRE(vout == "valid\n");
}

TEST_CASE("solve reports UNSAT on a triangle") {
    TempDir td;
    std::string g = td.file("k3.graph", kK3);
    std::string out;
    REQUIRE(run_cli("solve " + g + " --k 5", &out) == 1);
    REQUIRE(out == "UNSAT\n");
}

TEST_CASE("algo p9 refuses graphs with long induced paths") {
    TempDir td;
    std::string g = td.file("p9.graph", path_graph_text(9));
    REQUIRE(run_cli("solve " + g + " --k 5 --algo p9") == 2);
    // without the induced path the strict mode works
    std::string g8 = td.file("p8.graph", path_graph_text(8));
    REQUIRE(run_cli("solve " + g8 + " --k 5 --algo p9") == 0);
}

TEST_CASE("auto falls back to the oracle when assumptions break") {
    TempDir td;
    // P_10 breaks the localized solver's P_9-freeness requirement at k = 11,
    // but the instance itself is satisfiable
    std::string g = td.file("p10.graph", path_graph_text(10));
    REQUIRE(run_cli("solve " + g + " --k 11") == 0);
    REQUIRE(run_cli("solve " + g + " --k 11 --algo localized") == 2);
    // k = 4 is outside both algorithms: fallback still answers
    std::string c5 = td.file("c5.graph", kC5);
    REQUIRE(run_cli("solve " + c5 + " --k 4") == 1);
}

TEST_CASE("verify rejects bad colorings and list violations") {
    TempDir td;
    std::string g = td.file("c5.graph", kC5);
    std::string constant = td.file("const.coloring", "v 0 1\nv 1 1\nv 2 1\nv 3 1\nv 4 1\n");
    REQUIRE(run_cli("verify " + g + " " + constant + " --k 5") == 1);

    std::string ident = td.file("ident.coloring", "v 0 1\nv 1 2\nv 2 3\nv 3 4\nv 4 5\n");
    REQUIRE(run_cli("verify " + g + " " + ident + " --k 5") == 0);
    std::string lists = td.file("c5.lists", "0: 2\n");
    REQUIRE(run_cli("verify " + g + " " + ident + " --k 5 --lists " + lists) == 1);

    std::string garbage = td.file("bad.coloring", "v 0\n");
    REQUIRE(run_cli("verify " + g + " " + garbage + " --k 5") == 2);
}

TEST_CASE("solve respects list files") {
    TempDir td;
    std::string g = td.file("c5.graph", kC5);
    // pin vertex 0 to color 3: still satisfiable
    std::string lists = td.file("c5.lists", "0: 3\n");
    std::string out;
    REQUIRE(run_cli("solve " + g + " --k 5 --lists " + lists, &out) == 0);
    REQUIRE(out.find("v 0 3\n") != std::string::npos);
}

TEST_CASE("generate chain emits the eight-vertex double pentagon") {
    TempDir td;
    std::string base = td.path("chain");
    REQUIRE(run_cli("generate chain --d 2 --k 5 --out " + base) == 0);
    std::string graph = read_file(base + ".graph");
    REQUIRE(graph.rfind("8 9\n", 0) == 0);
    std::string meta = read_file(base + ".meta");
    REQUIRE(meta.find("gadget: chain\n") != std::string::npos);
    REQUIRE(meta.find("outputs: 0 5\n") != std::string::npos);

    // determinism: a second run produces identical bytes
    std::string base2 = td.path("chain2");
    REQUIRE(run_cli("generate chain --d 2 --k 5 --out " + base2) == 0);
    REQUIRE(read_file(base2 + ".graph") == graph);
    REQUIRE(read_file(base2 + ".meta") == read_file(base + ".meta"));
}

TEST_CASE("generate subdivide with m=1 reproduces the input graph") {
    TempDir td;
    std::string g = td.file("c5.graph", kC5);
    std::string base = td.path("sub");
    REQUIRE(run_cli("generate subdivide --graph " + g + " --m 1 --out " + base) == 0);
    REQUIRE(read_file(base + ".graph") == "5 5\n0 1\n0 4\n1 2\n2 3\n3 4\n");
}

TEST_CASE("generate nae emits the documented construction size") {
    TempDir td;
    std::string f = td.file("one.nae", "vars 3\n1 2 3\n");
    std::string base = td.path("nae");
    REQUIRE(run_cli("generate nae --formula " + f + " --s 2 --out " + base) == 0);
    std::string graph = read_file(base + ".graph");
    REQUIRE(graph.substr(0, 4) == "121 ");
    std::string meta = read_file(base + ".meta");
    REQUIRE(meta.find("d: 6\n") != std::string::npos);
}

TEST_CASE("generated monotone list instance solves as the formula does") {
    TempDir td;
    std::string f = td.file("mono.cnf", "vars 2\n1 2\n-1 -2\n");
    std::string base = td.path("mono");
    REQUIRE(run_cli("generate monotone-list --formula " + f + " --s 3 --g 4 --out " + base) == 0);
    // k = 6 routes through the oracle fallback and must come back satisfiable
    REQUIRE(run_cli("solve " + base + ".graph --k 6 --lists " + base + ".lists --algo oracle") ==
            0);
}

TEST_CASE("generate nonrainbow carries the precoloring in the lists file") {
    TempDir td;
    std::string f = td.file("h.hg", "vars 3\n1 2 3\nfix 1 1\nfix 2 2\nfix 3 3\n");
    std::string base = td.path("nr");
    REQUIRE(run_cli("generate nonrainbow --formula " + f + " --s 2 --out " + base) == 0);
    std::string lists = read_file(base + ".lists");
    REQUIRE(lists.find("0: 1\n") != std::string::npos);
    REQUIRE(lists.find("1: 2\n") != std::string::npos);
    // a rainbow-pinned hyperedge is unsatisfiable
    REQUIRE(run_cli("solve " + base + ".graph --k 5 --lists " + base + ".lists --algo oracle") ==
            1);
}

TEST_CASE("check prints the structural report") {
    TempDir td;
    std::string c9 = td.file("c9.graph", "9 9\n0 1\n1 2\n2 3\n3 4\n4 5\n5 6\n6 7\n7 8\n0 8\n");
    std::string out;
    REQUIRE(run_cli("check " + c9 + " --t 9 --t 10 --p 9", &out) == 0);
    REQUIRE(out.find("girth: 9\n") != std::string::npos);
    REQUIRE(out.find("triangle-free: yes\n") != std::string::npos);
    // every 9-vertex induced subgraph of C_9 is the cycle itself, so no induced P_9
    REQUIRE(out.find("p9-free: yes\n") != std::string::npos);
    REQUIRE(out.find("p10-free: yes\n") != std::string::npos);
    REQUIRE(out.find("gamma-9: yes\n") != std::string::npos);

    std::string p9 = td.file("p9.graph", path_graph_text(9));
    std::string pout;
    REQUIRE(run_cli("check " + p9 + " --t 9", &pout) == 0);
    REQUIRE(pout.find("p9-free: no\n") != std::string::npos);
    REQUIRE(pout.find("girth: inf\n") != std::string::npos);

    std::string star = td.file("k14.graph", "5 4\n0 1\n0 2\n0 3\n0 4\n");
    std::string cls;
    REQUIRE(run_cli("check " + star + " --forbidden --k 5 --variant extension", &cls) == 0);
    REQUIRE(cls.find("classify: NPCompleteKnown\n") != std::string::npos);
}

TEST_CASE("usage errors exit with code two") {
    TempDir td;
    std::string g = td.file("c5.graph", kC5);
    REQUIRE(run_cli("") == 2);                              // missing subcommand
    REQUIRE(run_cli("solve " + g) == 2);                    // missing --k
    REQUIRE(run_cli("solve " + td.path("nope") + " --k 5") == 2);
    REQUIRE(run_cli("solve " + g + " --k 5 --algo bogus") == 2);
    REQUIRE(run_cli("generate bogus --out " + td.path("x")) == 2);
    REQUIRE(run_cli("check " + g + " --forbidden") == 2);   // missing --k
    std::string bad = td.file("bad.graph", "2 1\n0 5\n");
    REQUIRE(run_cli("solve " + bad + " --k 5") == 2);       // endpoint out of range
}

TEST_CASE("solve output is byte-stable across runs") {
    TempDir td;
    std::string g = td.file("c7.graph", "7 7\n0 1\n1 2\n2 3\n3 4\n4 5\n5 6\n0 6\n");
    std::string a, b;
    REQUIRE(run_cli("solve " + g + " --k 7", &a) == 0);
    REQUIRE(run_cli("solve " + g + " --k 7", &b) == 0);
    REQUIRE(a == b);
    // --out writes the same bytes to a file
    std::string outfile = td.path("answer.txt");
    REQUIRE(run_cli("solve " + g + " --k 7 --out " + outfile) == 0);
    REQUIRE(read_file(outfile) == a);
}
