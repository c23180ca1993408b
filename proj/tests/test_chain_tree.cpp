#include <doctest.h>

#include <vector>

#include "arrfaces/chain_tree.hpp"
#include "arrfaces/errors.hpp"
#include "arrfaces/rng.hpp"

using namespace arrfaces;

namespace {

Point pt(long x, long y) { return Point{Scalar(x), Scalar(y)}; }

// random strictly-convex lower chain: x strictly increasing, slopes strictly
// increasing
std::vector<Point> random_lower_chain(Rng& rng, int n) {
  std::vector<Point> out;
  Scalar x(rng.range(-40, 0));
  Scalar y(rng.range(-20, 20));
  Scalar slope(rng.range(-1000, -500), 13);
  for (int i = 0; i < n; ++i) {
    out.push_back(Point{x, y});
    const Scalar dx(rng.range(1, 9));
    slope += Scalar(rng.range(1, 40), 7);
    x += dx;
    y += slope * dx;
  }
  return out;
}

}  // namespace

TEST_CASE("build basics") {
  auto h = ChainHandle::build_from_sorted({pt(0, 0), pt(1, -1), pt(2, 0)}, ChainSide::Lower);
  CHECK(h.count() == 3);
  CHECK(h.leftmost() == pt(0, 0));
  CHECK(h.rightmost() == pt(2, 0));
  auto empty = ChainHandle::build_from_sorted({}, ChainSide::Lower);
  CHECK(empty.count() == 0);
  CHECK(empty.empty());
  CHECK_THROWS_AS(
      ChainHandle::build_from_sorted({pt(0, 0), pt(1, 1), pt(2, 0)}, ChainSide::Lower), Error);
  CHECK_THROWS_AS(
      ChainHandle::build_from_sorted({pt(0, 0), pt(0, 1)}, ChainSide::Lower), Error);
}

TEST_CASE("split boundary is left-closed") {
  auto h = ChainHandle::build_from_sorted({pt(0, 0), pt(2, -1), pt(4, 0)}, ChainSide::Lower);
  auto [l, r] = h.split_leq(Scalar(2));
  CHECK(l.to_vector() == std::vector<Point>{pt(0, 0), pt(2, -1)});
  CHECK(r.to_vector() == std::vector<Point>{pt(4, 0)});
  // h itself stays usable
  CHECK(h.count() == 3);
  CHECK(h.to_vector().size() == 3);

  auto [l2, r2] = h.split_leq(Scalar(-100));
  CHECK(l2.empty());
  CHECK(r2.count() == 3);

  auto single = ChainHandle::build_from_sorted({pt(0, 0)}, ChainSide::Lower);
  auto [l3, r3] = single.split_leq(Scalar(0));
  CHECK(l3.count() == 1);
  CHECK(r3.empty());
  auto [l4, r4] = single.split_lt(Scalar(0));
  CHECK(l4.empty());
  CHECK(r4.count() == 1);
}

TEST_CASE("join") {
  auto a = ChainHandle::build_from_sorted({pt(0, 0), pt(1, -1)}, ChainSide::Lower);
  auto b = ChainHandle::build_from_sorted({pt(3, 0)}, ChainSide::Lower);
  auto j = ChainHandle::join(a, b);
  CHECK(j.count() == 3);
  CHECK(j.to_vector() == std::vector<Point>{pt(0, 0), pt(1, -1), pt(3, 0)});

  auto empty = ChainHandle(ChainSide::Lower);
  CHECK(ChainHandle::join(empty, a).fingerprint() == a.fingerprint());
  CHECK(ChainHandle::join(a, empty).fingerprint() == a.fingerprint());

  auto overlap = ChainHandle::build_from_sorted({pt(1, 5)}, ChainSide::Lower);
  auto wide = ChainHandle::build_from_sorted({pt(0, 0), pt(2, 0)}, ChainSide::Lower);
  CHECK_THROWS_AS(ChainHandle::join(wide, overlap), Error);

  // reflex seam
  auto up = ChainHandle::build_from_sorted({pt(2, 5)}, ChainSide::Lower);
  auto flat = ChainHandle::build_from_sorted({pt(0, 0), pt(1, -1)}, ChainSide::Lower);
  auto joined = ChainHandle::join(flat, up);  // still convex: -1 -> 5 turns upward
  CHECK(joined.count() == 3);
  auto bad_right = ChainHandle::build_from_sorted({pt(2, -10), pt(3, -9)}, ChainSide::Lower);
  CHECK_THROWS_AS(ChainHandle::join(flat, bad_right), Error);
}

TEST_CASE("search on chains") {
  auto h = ChainHandle::build_from_sorted({pt(0, 2), pt(1, 0), pt(2, 3)}, ChainSide::Lower);
  // minimize y over a convex lower chain
  auto ymin = h.search([](const ChainHandle::Probe& pr) {
    if (pr.next && pr.next->y < pr.v.y) return ChainHandle::SearchStep::GoRight;
    if (pr.prev && pr.prev->y < pr.v.y) return ChainHandle::SearchStep::GoLeft;
    return ChainHandle::SearchStep::Found;
  });
  CHECK(ymin == pt(1, 0));

  auto single = ChainHandle::build_from_sorted({pt(5, 7)}, ChainSide::Lower);
  auto got = single.search([](const ChainHandle::Probe&) { return ChainHandle::SearchStep::Found; });
  CHECK(got == pt(5, 7));

  CHECK_THROWS_AS(
      h.search([](const ChainHandle::Probe&) { return ChainHandle::SearchStep::GoLeft; }), Error);
}

TEST_CASE("fingerprints depend only on the sequence") {
  auto h = ChainHandle::build_from_sorted({pt(0, 0), pt(2, -1), pt(4, 0)}, ChainSide::Lower);
  const uint64_t fp = h.fingerprint();
  auto [l, r] = h.split_leq(Scalar(2));
  auto rejoined = ChainHandle::join(l, r);
  CHECK(h.fingerprint() == fp);
  CHECK(rejoined.fingerprint() == fp);
  CHECK(rejoined.to_vector() == h.to_vector());

  // different history, same sequence
  auto [l2, r2] = h.split_lt(Scalar(4));
  auto again = ChainHandle::join(l2, r2);
  CHECK(again.fingerprint() == fp);

  auto other = ChainHandle::build_from_sorted({pt(0, 0), pt(2, -1), pt(4, 1)}, ChainSide::Lower);
  CHECK(other.fingerprint() != fp);
}

TEST_CASE("persistence under random split/join storms") {
  Rng rng(2024);
  for (int round = 0; round < 30; ++round) {
    auto base = random_lower_chain(rng, 2 + static_cast<int>(rng.below(60)));
    auto h = ChainHandle::build_from_sorted(base, ChainSide::Lower);
    const uint64_t fp = h.fingerprint();
    h.validate();
    std::vector<ChainHandle> pool{h};
    for (int op = 0; op < 40; ++op) {
      const ChainHandle& victim = pool[rng.below(pool.size())];
      if (victim.empty()) continue;
      const Scalar x = victim.at(static_cast<int64_t>(rng.below(victim.count()))).x;
      auto [a, b] = victim.split_leq(x);
      pool.push_back(a);
      pool.push_back(b);
      auto joined = ChainHandle::join(a, b);
      CHECK(joined.fingerprint() == victim.fingerprint());
      pool.push_back(joined);
    }
    CHECK(h.fingerprint() == fp);
    CHECK(h.to_vector() == base);
    for (const auto& c : pool) c.validate();
  }
}

TEST_CASE("tree height stays logarithmic") {
  Rng rng(5);
  auto base = random_lower_chain(rng, 4000);
  auto h = ChainHandle::build_from_sorted(base, ChainSide::Lower);
  h.validate();  // includes the height bound
}
