#include "doctest.h"

#include "cyberevo/embedded_data.hpp"
#include "cyberevo/kv_config.hpp"
#include "cyberevo/rng.hpp"

#include <set>

using namespace cyberevo;

TEST_CASE("key-value config parsing") {
    const auto kv = KeyValueConfig::parse("# comment\n a = 1 \nname = hello world\nlist = 25, 50\nflag = true\n");
    CHECK(kv.get_int("a", 0) == 1);
    CHECK(kv.get_string("name", "") == "hello world");
    CHECK(kv.get_int_list("list", {}) == std::vector<long long>{25, 50});
    CHECK(kv.get_bool("flag", false));
    CHECK(kv.get_double("missing", 2.5) == 2.5);
    CHECK(kv.unused_keys().empty());

    CHECK_THROWS_AS(KeyValueConfig::parse("a = 1\na = 2\n"), Error);
    CHECK_THROWS_AS(KeyValueConfig::parse("no equals sign\n"), Error);
    CHECK_THROWS_AS(KeyValueConfig::parse("a = x").get_int("a", 0), Error);
}

TEST_CASE("unused keys are reported") {
    const auto kv = KeyValueConfig::parse("a = 1\ntypo = 2\n");
    (void)kv.get_int("a", 0);
    CHECK(kv.unused_keys() == std::vector<std::string>{"typo"});
}

TEST_CASE("seed derivation separates paths") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 20; ++i)
        for (std::uint64_t j = 0; j < 20; ++j) seen.insert(derive_seed(42, {i, j}));
    CHECK(seen.size() == 400);
    CHECK(derive_seed(42, {1, 2}) == derive_seed(42, {1, 2}));
    CHECK(derive_seed(42, {1, 2}) != derive_seed(42, {2, 1}));
    CHECK(derive_seed(42, {1}) != derive_seed(43, {1}));
}

TEST_CASE("rng is reproducible") {
    Rng a(7), b(7);
    for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
    Rng c(1);
    for (int i = 0; i < 1000; ++i) {
        const auto v = c.uniform_int(-2, 3);
        CHECK(v >= -2);
        CHECK(v <= 3);
        CHECK(c.index(5) < 5);
    }
}

TEST_CASE("embedded data files are available") {
    CHECK(embedded_file("rewards.txt").find("Phase 2B") != std::string_view::npos);
    CHECK(!embedded_file("grammars/red_baseline.bnf").empty());
    CHECK_THROWS_AS(embedded_file("nope.txt"), Error);
}
