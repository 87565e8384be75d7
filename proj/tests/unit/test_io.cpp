#include <doctest.h>

#include <filesystem>

#include "dynrigid/errors.hpp"
#include "dynrigid/io.hpp"

using namespace dynrigid;
namespace fs = std::filesystem;

static const fs::path kData = DYNRIGID_DATA_DIR;

TEST_CASE("domain files") {
  const DomainSpec c = io::load_domain(kData / "circle.yaml");
  CHECK(c.coeff(0) == 1.0);
  const DomainSpec p = io::load_domain(kData / "perturbed.yaml");
  CHECK(p.coeff(3) == 0.01);
  auto kind = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::InvalidArgument;
  };
  CHECK(kind([] { io::load_domain(kData / "malformed.yaml"); }) == ErrorKind::ParseError);
  CHECK(kind([] { io::load_domain(kData / "does_not_exist.yaml"); }) == ErrorKind::ParseError);
  CHECK(kind([] { io::parse_domain("coefficients: [[0, 1.0]]\ncolour: red\n"); }) == ErrorKind::ParseError);
  CHECK(kind([] { io::load_family(kData / "family_missing_base.yaml"); }) == ErrorKind::ParseError);
}

TEST_CASE("family with a relative base") {
  const DeformationFamily f = io::load_family(kData / "family_generic.yaml");
  CHECK(f.base.coeff(3) == 0.01);
  CHECK_FALSE(f.direction.empty());
  CHECK(f.tau_grid.size() == 3);
}

TEST_CASE("canonical hashing") {
  const DomainSpec a = io::load_domain(kData / "perturbed.yaml");
  const DomainSpec b = io::load_domain(kData / "perturbed.yaml");
  const DomainSpec c = io::load_domain(kData / "circle.yaml");
  CHECK(io::canonical(a) != io::canonical(c));
  CHECK(io::canonical(a) == io::canonical(b));
  CHECK(io::hash_hex(io::canonical(a)) == io::hash_hex(io::canonical(b)));
  CHECK(io::hash_hex(io::canonical(a)).size() == 16);
  CHECK(io::hash_hex("a") != io::hash_hex("b"));
  CHECK(io::fnv1a("") == 14695981039346656037ull);
  CHECK(io::fmt(0.1) == "0.1");
}
