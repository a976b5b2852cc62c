#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "cohomkit/cli/app.hpp"
#include "cohomkit/cli/cache.hpp"
#include "cohomkit/cli/groupspec.hpp"
#include "cohomkit/config.hpp"
#include "cohomkit/errors.hpp"

using namespace cohomkit;
using namespace cohomkit::cli;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int rc;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "cohomtool");
  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int rc = run_command(static_cast<int>(argv.size()), argv.data(), out, err);
  return {rc, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("cohomkit_test_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string error_of(const std::string& text) {
  try {
    parse_group_spec(text);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("group spec parsing") {
  auto s = parse_group_spec("# comment\ngroup S3\nperm (1 2 3)\nperm (1 2)\n");
  CHECK(s.name == "S3");
  CHECK(s.kind == GroupSpec::Kind::Perm);
  CHECK(s.degree == 3);
  CHECK(build_group(s)->order() == 6);

  auto m = parse_group_spec("group SL(2,4)\nfield 2 2 poly 1+x+x^2\ndim 2\nmatrix\nx 0\n0 1+x\nmatrix\n1 1\n1 0\n");
  CHECK(m.kind == GroupSpec::Kind::Mat);
  CHECK(m.e == 2);
  CHECK(build_group(m)->order() == 60);
}

TEST_CASE("group spec errors carry line and column") {
  CHECK(error_of("group X\nfrobnicate 3\n").find("line 2, column 1") != std::string::npos);
  std::string e = error_of("group X\nperm (1 2)(2 3)\n");
  CHECK(e.find("line 2, column 11") != std::string::npos);
  CHECK(e.find("repeated") != std::string::npos);
  CHECK(error_of("group X\nperm (1 2\n").find("line 2") != std::string::npos);
  CHECK(error_of("group X\nfield 2 2 poly 1+x^2\n").find("line 2") != std::string::npos);
  CHECK(error_of("group X\nfield 4\n").find("line 2") != std::string::npos);
  CHECK(error_of("group X\nfield 3\ndim 2\nmatrix\n1 0\n").find("line") != std::string::npos);
}

TEST_CASE("bundled group specs round-trip and have the right orders") {
  fs::path dir = fs::path(bundled_data_dir()) / "groups";
  REQUIRE(fs::is_directory(dir));
  size_t n = 0;
  for (const auto& ent : fs::directory_iterator(dir)) {
    if (ent.path().extension() != ".grp") continue;
    auto s = load_group_spec(ent.path().string());
    auto again = parse_group_spec(emit_group_spec(s));
    CHECK_MESSAGE(again == s, ent.path().string());
    CHECK(emit_group_spec(again) == emit_group_spec(s));
    ++n;
  }
  CHECK(n >= 30);
  CHECK(build_group(load_group_spec("sl2_9"))->order() == 720);
  CHECK(build_group(load_group_spec("sl2_8"))->order() == 504);
  CHECK(build_group(load_group_spec("sl2_4"))->order() == 60);
  CHECK(build_group(load_group_spec("sl3_2"))->order() == 168);
  CHECK(build_group(load_group_spec("d10"))->order() == 10);
  CHECK(build_group(load_group_spec("a7"))->order() == 2520);
  CHECK(build_group(load_group_spec("c3_4"))->order() == 81);
}

TEST_CASE("sha256") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("result cache") {
  TempDir t("cache");
  std::ostringstream warn;
  ResultCache c(t.path.string(), &warn);
  json key{{"command", "x"}, {"n", 1}};
  CHECK_FALSE(c.get(key).has_value());
  c.put(key, json{{"v", 7}});
  REQUIRE(c.get(key).has_value());
  CHECK((*c.get(key))["v"] == 7);
  CHECK_FALSE(c.get(json{{"command", "x"}, {"n", 2}}).has_value());

  fs::path file = t.path / (ResultCache::key_hash(key) + ".json");
  REQUIRE(fs::exists(file));
  std::ofstream(file, std::ios::trunc) << "{ not json";
  CHECK_FALSE(c.get(key).has_value());
  CHECK(warn.str().find("warning") != std::string::npos);

  ResultCache off("", nullptr);
  CHECK_FALSE(off.enabled());
  off.put(key, json{{"v", 1}});
  CHECK_FALSE(off.get(key).has_value());
}

TEST_CASE("cache tolerates concurrent writers") {
  TempDir t("conc");
  json key{{"command", "same"}};
  json payload{{"rows", json::array({1, 2, 3})}};
  std::vector<std::thread> ts;
  for (int i = 0; i < 8; ++i)
    ts.emplace_back([&] {
      ResultCache c(t.path.string());
      for (int j = 0; j < 20; ++j) {
        c.put(key, payload);
        auto got = c.get(key);
        CHECK((!got || *got == payload));
      }
    });
  for (auto& th : ts) th.join();
  REQUIRE(ResultCache(t.path.string()).get(key).has_value());
  CHECK(*ResultCache(t.path.string()).get(key) == payload);
  size_t files = 0;
  for (const auto& e : fs::directory_iterator(t.path)) files += e.is_regular_file();
  CHECK(files == 1);
}

TEST_CASE("concurrent cohomtool processes share one store") {
  TempDir t("proc");
  std::string cmd = "for i in 1 2 3 4 5 6 7 8; do COHOMTOOL_STORE='" + t.path.string() + "' '" +
                    std::string(COHOMTOOL_PATH) + "' cohom --group a4 --prime 2 --all --deg 2 > '" +
                    t.path.string() + "/out'$i'.txt' & done; wait";
  REQUIRE(std::system(cmd.c_str()) == 0);
  std::string first;
  for (int i = 1; i <= 8; ++i) {
    std::ifstream in(t.path / ("out" + std::to_string(i) + ".txt"));
    std::string s((std::istreambuf_iterator<char>(in)), {});
    CHECK(json::parse(s)["payload"]["rows"][0]["h2"] == 1);
    if (i == 1) first = s;
    else CHECK(s == first);
  }
}

TEST_CASE("commands and exit codes") {
  TempDir t("cmd");
  std::string store = t.path.string();

  auto a = run({"cohom", "--group", "a5", "--prime", "2", "--all", "--deg", "2", "--store", store});
  REQUIRE(a.rc == kExitOk);
  json j = json::parse(a.out);
  CHECK(j["command"] == "cohom");
  CHECK(j["payload"]["rows"][0]["label"] == "trivial");
  CHECK(j["payload"]["rows"][0]["h2"] == 1);
  CHECK(j["payload"]["rows"][0]["h1"] == 0);

  auto b = run({"cohom", "--group", "a5", "--prime", "2", "--all", "--deg", "2", "--store", store});
  CHECK(b.out == a.out);
  auto c = run({"cohom", "--group", "a5", "--prime", "2", "--all", "--deg", "2", "--no-cache"});
  CHECK(c.out == a.out);

  auto r = run({"rhat", "--group", "c2c2", "--store", store});
  REQUIRE(r.rc == kExitOk);
  CHECK(json::parse(r.out)["payload"]["rhat"] == 3);

  auto cat = run({"catalog", "--group", "s3", "--prime", "3", "--store", store});
  REQUIRE(cat.rc == kExitOk);
  CHECK(json::parse(cat.out)["payload"]["modules"].size() == 2);

  auto bd = run({"bounds", "--group", "a5", "--prime", "5", "--module", "0", "--store", store});
  REQUIRE(bd.rc == kExitOk);
  CHECK(json::parse(bd.out)["payload"]["best"].contains("lemma"));

  std::string csv = (t.path / "out.csv").string(), js = (t.path / "out.json").string();
  auto f = run({"cohom", "--group", "s3", "--prime", "2", "--module", "0", "--deg", "1", "--store", store, "--json", js,
                "--csv", csv});
  CHECK(f.rc == kExitOk);
  CHECK(f.out.empty());
  std::ifstream cin_(csv);
  std::string header;
  std::getline(cin_, header);
  CHECK(header == "module,label,dim,endo_degree,h0,h1");
  std::ifstream jin(js);
  CHECK(json::parse(jin)["payload"]["rows"][0]["h1"] == 1);

  auto tm = run({"rhat", "--group", "c2c2", "--store", store, "--timing"});
  CHECK(json::parse(tm.out)["timing"]["cached"] == true);

  CHECK(run({"cohom", "--group", "a5", "--prime", "4", "--all"}).rc == kExitInput);
  CHECK(run({"cohom", "--group", "no_such_group", "--prime", "2", "--all"}).rc == kExitInput);
  CHECK(run({"cohom", "--group", "a5", "--prime", "2"}).rc == kExitInput);
  CHECK(run({"cohom", "--group", "a5", "--prime", "2", "--module", "99", "--no-cache"}).rc == kExitInput);
  CHECK(run({"frobnicate"}).rc == kExitInput);

  Caps saved = caps();
  std::string cfg = (t.path / "caps.json").string();
  std::ofstream(cfg) << R"({"table_cap": 10})";
  auto cap = run({"catalog", "--group", "a5", "--prime", "2", "--no-cache", "--config", cfg});
  CHECK(cap.rc == kExitCapacity);
  CHECK(cap.err.find("table_cap") != std::string::npos);
  caps() = saved;
}

TEST_CASE("verify subcommand") {
  auto v = run({"verify", "--suite", "paper", "--only", "1", "--max-order", "30"});
  CHECK(v.rc == kExitOk);
  CHECK(v.out.rfind("PASS criterion 1:", 0) == 0);
  CHECK(run({"verify", "--suite", "other"}).rc == kExitInput);
}
