#include <doctest.h>

#include <filesystem>

#include "epwforge/store.hpp"
#include "support.hpp"

using namespace epwforge;
using namespace testing;

TEST_CASE("Lagrangians round-trip with stable hashes") {
  int n = 0;
  for (const Field& f : {kQ, Field::prime(3), Field::prime(7), Field::prime(10007), Field::prime(2147483647)}) {
    auto run = [&](auto tag) {
      using S = decltype(tag);
      for (std::uint64_t seed = 1; seed <= 10; ++seed, ++n) {
        const auto a = random_lagrangian<S>(seed, f);
        const json j = to_json(a);
        const auto back = std::get<Lagrangian<S>>(lagrangian_from_json(json::parse(j.dump())));
        CHECK(back == a);
        CHECK(content_hash(back) == content_hash(a));
        CHECK(back.provenance() == a.provenance());
        CHECK(j["sha256"] == content_hash(a));
      }
    };
    f.is_prime() ? run(Fp()) : run(Rational());
  }
  CHECK(n == 50);
}

TEST_CASE("sextics round-trip") {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto a = random_lagrangian<Fp>(seed, Field::prime(7));
    const auto s = sextic_with_provenance(a);
    const auto back = std::get<EPWSextic<Fp>>(sextic_from_json(json::parse(to_json(s).dump())));
    CHECK(back.poly == s.poly);
    CHECK(back.lagrangian_sha == content_hash(a));
    CHECK(content_hash(back) == content_hash(s));
  }
  const auto q = sextic_with_provenance(random_lagrangian<Rational>(1, kQ));
  CHECK(std::get<EPWSextic<Rational>>(sextic_from_json(to_json(q))).poly == q.poly);
}

TEST_CASE("the same subspace hashes the same whatever basis built it") {
  const Field f = Field::prime(11);
  const auto a = random_lagrangian<Fp>(3, f);
  std::vector<KVector<Fp>> mixed;
  for (int i = 0; i < 10; ++i) mixed.push_back(Fp(i + 2, 11) * a.vector(i) + a.vector((i + 1) % 10));
  const Lagrangian<Fp> b(Subspace<Fp>::span(mixed), f, {"other", 99, "rebuilt"});
  CHECK(content_hash(a) == content_hash(b));
  CHECK(content_hash(a) != content_hash(random_lagrangian<Fp>(4, f)));
  CHECK(content_hash(a) != content_hash(dual_transport(a)));
}

TEST_CASE("corrupted files are rejected") {
  const auto a = random_lagrangian<Fp>(5, Field::prime(7));
  const json good = to_json(a);

  json bad_hash = good;
  bad_hash["sha256"] = std::string(64, '0');
  CHECK_THROWS_AS(lagrangian_from_json(bad_hash), InvariantViolation);

  json bad_row = good;
  auto& row = bad_row["basis"][0];
  for (int s = 19; s >= 0; --s)
    if (row[s] == 0) {
      row[s] = 1;
      break;
    }
  CHECK_THROWS_AS(lagrangian_from_json(bad_row), Error);

  json bad_version = good;
  bad_version["format"] = "epwforge/2";
  CHECK_THROWS_AS(lagrangian_from_json(bad_version), ParseError);

  json bad_field = good;
  bad_field["p"] = 9;
  CHECK_THROWS_AS(lagrangian_from_json(bad_field), ParseError);

  json not_canonical = good;
  not_canonical["basis"][0][0] = 7;
  CHECK_THROWS_AS(lagrangian_from_json(not_canonical), ParseError);

  const auto s = sextic_with_provenance(a);
  json bad_sextic = to_json(s);
  bad_sextic["terms"][1]["c"] = (bad_sextic["terms"][1]["c"].get<int>() + 1) % 7;
  CHECK_THROWS_AS(sextic_from_json(bad_sextic), Error);
  json wrong_degree = to_json(s);
  wrong_degree["terms"][0]["exp"][0] = wrong_degree["terms"][0]["exp"][0].get<int>() + 1;
  CHECK_THROWS_AS(sextic_from_json(wrong_degree), Error);
}

TEST_CASE("files") {
  const auto dir = std::filesystem::temp_directory_path() / "epwforge_store_test";
  std::filesystem::create_directories(dir);
  const auto a = random_lagrangian<Rational>(8, kQ);
  const std::string path = (dir / "a.json").string();
  CHECK(save(AnyLagrangian(a), path) == content_hash(a));
  CHECK(std::get<Lagrangian<Rational>>(load_lagrangian(path)) == a);
  CHECK_THROWS_AS(load_lagrangian((dir / "missing.json").string()), Error);
  std::filesystem::remove_all(dir);
}

TEST_CASE("trivector descriptors") {
  const json j = json::parse(R"({"field": "Fp", "p": 5, "terms": [{"idx": [1, 2, 3], "c": 1}, {"idx": [1, 4, 5], "c": 4}]})");
  const auto w = std::get<KVector<Fp>>(trivector_from_json(j, kQ));
  CHECK(w.at(mask_of({1, 4, 5})) == Fp(4, 5));
  const auto bare = trivector_from_json(json::parse(R"([{"idx": [1, 2, 3], "c": "-1/2"}])"), kQ);
  CHECK(std::get<KVector<Rational>>(bare).at(mask_of({1, 2, 3})) == Rational(-1, 2));
  CHECK_THROWS_AS(trivector_from_json(json::parse(R"([{"idx": [2, 1, 3], "c": 1}])"), kQ), ParseError);
  CHECK_THROWS_AS(trivector_from_json(json::parse(R"([{"idx": [1, 1, 3], "c": 1}])"), kQ), ParseError);
}
