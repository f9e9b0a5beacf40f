#include "doctest.h"

#include <sstream>

#include "qsi/error.hpp"
#include "qsi/keyfile.hpp"

using namespace qsi;

TEST_CASE("public and secret keys round trip") {
  for (int version : {1, 2}) {
    auto kp = keygen_user(101, 3, version, 9);
    std::stringstream ps, ss;
    write_public(ps, kp.pub);
    write_secret(ss, kp.sec);
    CHECK(peek_role(ps) == "public");
    auto pub = read_public(ps);
    auto sec = read_secret(ss);
    CHECK(pub.version == version);
    CHECK(pub.a1 == kp.pub.a1);
    CHECK(pub.a2 == kp.pub.a2);
    CHECK(pub.sigma_p == kp.pub.sigma_p);
    CHECK(pub.h == kp.pub.h);
    CHECK(sec.sigma_s == kp.sec.sigma_s);
    CHECK(sec.frame == kp.sec.frame);

    auto res = respond(pub, 4);
    std::stringstream ms, ks;
    write_message(ms, {101, 3, version}, res.msg);
    write_shared(ks, {101, 3, version}, res.key);
    auto [mh, msg] = read_message(ms);
    auto [kh, key] = read_shared(ks);
    CHECK(mh.q == 101);
    CHECK(msg.h == res.msg.h);
    CHECK(key.j == res.key.j);
    CHECK(accept(sec, msg).j == res.key.j);
  }
}

TEST_CASE("ttp files round trip") {
  auto setup = ttp_setup(101, 3, 2);
  auto user = ttp_register(setup.params, 3);
  std::stringstream ts, us;
  write_ttp(ts, setup.params);
  auto params = read_ttp(ts);
  write_user(us, params, user);
  auto back = read_user(us, params);
  CHECK(back.word == user.word);
  CHECK(back.sigma == user.sigma);
  CHECK(back.h == user.h);
}

TEST_CASE("malformed key files") {
  auto kp = keygen_user(101, 3, 1, 9);
  std::stringstream good;
  write_public(good, kp.pub);
  const std::string text = good.str();
  auto reject = [](std::string s) {
    std::istringstream is(s);
    CHECK_THROWS_WITH_AS(read_public(is), doctest::Contains("MalformedInput"), Error);
  };
  reject("QSI2" + text.substr(4));
  auto with_q = [&](const std::string& q) {
    std::string s = text;
    s.replace(s.find("q 101"), 5, "q " + q);
    return s;
  };
  reject(with_q("9"));
  reject(with_q("6"));
  std::string m4 = text;
  m4.replace(m4.find("m 3"), 3, "m 4");
  reject(m4);
  reject(text.substr(0, text.size() / 2));
  std::istringstream wrong_role(text);
  CHECK_THROWS_WITH_AS(read_secret(wrong_role), doctest::Contains("MalformedInput"), Error);
}
