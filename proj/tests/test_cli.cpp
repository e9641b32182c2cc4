#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>

#include <json.hpp>

#ifndef FDGL_CLI
#error "FDGL_CLI must name the command line binary"
#endif

namespace {

struct Run {
    int status = -1;
    std::string out;
};

Run run(const std::string& args) {
    Run r;
    std::string cmd = std::string(FDGL_CLI) + " " + args + " 2>&1";
    FILE* f = popen(cmd.c_str(), "r");
    REQUIRE(f);
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), f)) > 0) r.out.append(buf.data(), n);
    int st = pclose(f);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

bool has(const Run& r, const std::string& s) { return r.out.find(s) != std::string::npos; }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("classify") {
    auto r = run("classify --rho 8/15");
    CHECK(r.status == 0);
    CHECK(has(r, "denominator has two distinct odd primes"));
    auto h = run("classify --rho 1/2");
    CHECK(h.status == 0);
    CHECK(has(h, "10 descriptors"));
    auto j = run("classify --rho 3/4 --json -");
    CHECK(j.status == 0);
    // stdout is the JSON document alone
    auto doc = nlohmann::json::parse(j.out);
    CHECK(doc["version"] == 1);
    CHECK(doc["descriptors"].size() == 3);
    auto g = run("classify --rho 15/16 --group");
    CHECK(has(g, "Z2^4"));
}

TEST_CASE("lambda") {
    auto r = run("lambda --group \"Z2 x Z4\"");
    CHECK(r.status == 0);
    CHECK(has(r, "1/2"));
    auto s = run("lambda --spec \"V(x^2+x+1@2)\"");
    CHECK(s.status == 0);
    CHECK(has(s, "3/4"));
    CHECK(has(s, "1:1 3:1"));
}

TEST_CASE("poly") {
    auto r = run("poly --enum 2 4");
    CHECK(r.status == 0);
    CHECK(has(r, "x^4+x+1"));
    CHECK(has(r, "x^4+x^3+1"));
    auto c = run("poly --count 2 5");
    CHECK(has(c, "6"));
    auto q = run("poly \"x^4+x^3+x^2+x+1 mod 2\"");
    CHECK(q.status == 0);
    CHECK(has(q, "5"));
}

TEST_CASE("bounds") {
    auto r = run("bounds --certify rho0");
    CHECK(r.status == 0);
    CHECK(has(r, "pass"));
    CHECK(has(r, "0.504307524"));
    auto d = run("--decimal 9 bounds --certify rho1");
    CHECK(d.status == 0);
    CHECK(has(d, "0.750063685"));
}

TEST_CASE("prng") {
    auto r = run("prng lcg 9 4 1 0 --count 9");
    CHECK(r.status == 0);
    CHECK(has(r, "0\n1\n5\n3\n4\n8\n6\n7\n2\n"));
    auto c = run("prng lcg 8 3 1 0 --certify");
    CHECK(c.status == 0);
    CHECK(has(c, "certified not full period"));
    CHECK(has(c, "measured 4"));
    auto v = run("prng vec 2 \"x^5+x^2+1\" 1 --certify");
    CHECK(v.status == 0);
    CHECK(has(v, "31"));
}

TEST_CASE("errors and determinism") {
    CHECK(run("").status == 2);
    CHECK(run("classify").status == 2);
    CHECK(run("classify --rho 1/3").status == 2);
    CHECK(run("lambda --group \"Z2 x\"").status == 2);
    CHECK(run("frobnicate").status == 2);
    CHECK(run("prng lcg 9 3 1 0").status != 0);
    auto big = run("lambda --group \"Z2^20\"");
    CHECK(big.status == 3);
    CHECK(run("classify --rho 2/3").out == run("classify --rho 2/3").out);
}

}
