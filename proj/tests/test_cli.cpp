#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;

namespace {

int exit_code(const std::string& args) {
  const std::string cmd = std::string(NFISAC_BIN) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("nfisac_cli_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("exit codes") {
  CHECK(exit_code("--version") == 0);
  CHECK(exit_code("presets") == 0);
  CHECK(exit_code("preset fig2") == 0);
  CHECK(exit_code("preset nope") == 2);
  CHECK(exit_code("validate --preset fig3") == 0);
  CHECK(exit_code("validate --preset nope") == 2);
  CHECK(exit_code("crb-sweep") == 2);
  CHECK(exit_code("no-such-command") == 2);

  const fs::path dir = scratch("cfg");
  fs::create_directories(dir);
  std::ofstream(dir / "bad.yaml") << "experiment: crb-sweep\nsweep: {carrier_hz: 0}\n";
  CHECK(exit_code("validate --config " + (dir / "bad.yaml").string()) == 2);
  CHECK(exit_code("crb-sweep --config " + (dir / "bad.yaml").string()) == 2);

  // Preset for a different experiment.
  CHECK(exit_code("crb-map --preset fig2 --out " + (dir / "x").string()) == 2);

  CHECK(exit_code("crb-sweep --preset fig2 --out " + (dir / "ok").string()) == 0);
  CHECK(fs::exists(dir / "ok" / "crb_sweep.csv"));
  CHECK(fs::exists(dir / "ok" / "manifest.json"));

  std::ofstream(dir / "file") << "x";
  CHECK(exit_code("crb-sweep --preset fig2 --out " + (dir / "file" / "sub").string()) == 3);
  fs::remove_all(dir);
}
