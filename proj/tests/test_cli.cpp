// Copyright 2026 The scootnav Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "scootnav/io.hpp"
#include "scootnav/replay.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>
#include <string>

namespace
{
using namespace scootnav;
namespace fs = std::filesystem;

const fs::path kCli = SCOOTNAV_CLI_PATH;
const fs::path kConfigDir = SCOOTNAV_CONFIG_DIR;

struct Result
{
  int code = -1;
  std::string out;  // stdout and stderr
};

Result run(const std::string & args)
{
  const std::string cmd = "'" + kCli.string() + "' " + args + " 2>&1";
  Result r;
  FILE * pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), static_cast<int>(buf.size()), pipe)) r.out += buf.data();
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class Cli : public ::testing::Test
{
protected:
  void SetUp() override
  {
    std::random_device rd;
    dir_ = fs::temp_directory_path() / ("scootnav_cli_" + std::to_string(rd()) + std::to_string(rd()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string & name, const std::string & text) const
  {
    io::write_text(dir_ / name, text);
    return dir_ / name;
  }
  std::string q(const fs::path & p) const { return "'" + p.string() + "'"; }

  fs::path dir_;
};

TEST_F(Cli, HelpAndUsage)
{
  EXPECT_EQ(run("--help").code, 0);
  EXPECT_EQ(run("").code, 1);
  EXPECT_EQ(run("frobnicate").code, 1);
}

TEST_F(Cli, RunAcceptanceConfig)
{
  const Result r = run("run --config " + q(kConfigDir / "acceptance.json") + " --out " + q(dir_ / "out"));
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("completed"), std::string::npos) << r.out;
  for (const char * f : {"plant.csv", "ekf.csv", "mpc.csv", "commands.csv", "metrics.json", "position.svg",
                         "vel_steer.svg", "roll.svg"}) {
    EXPECT_TRUE(fs::exists(dir_ / "out" / f)) << f;
  }
  const auto m = nlohmann::json::parse(io::read_text(dir_ / "out" / "metrics.json"));
  EXPECT_TRUE(m.at("completed").get<bool>());
}

TEST_F(Cli, RunTimeLimitExitCode)
{
  write("path.json", R"({"waypoints_enu": [[0,0],[20,0]], "half_width": 0.75})");
  const fs::path cfg = write("c.json", R"({"schema_version": 1, "path_file": "path.json", "time_limit": 1})");
  const Result r = run("run --config " + q(cfg) + " --out " + q(dir_ / "out"));
  EXPECT_EQ(r.code, 3) << r.out;
  EXPECT_NE(r.out.find("time_limit"), std::string::npos) << r.out;
}

TEST_F(Cli, RunSeedOverrideChangesOutput)
{
  write("path.json", R"({"waypoints_enu": [[0,0],[20,0]], "half_width": 0.75})");
  const fs::path cfg = write("c.json", R"({"schema_version": 1, "path_file": "path.json", "time_limit": 1})");
  run("run --config " + q(cfg) + " --out " + q(dir_ / "a"));
  run("run --config " + q(cfg) + " --out " + q(dir_ / "b"));
  run("run --config " + q(cfg) + " --seed 12345 --out " + q(dir_ / "c"));
  const std::string a = io::read_text(dir_ / "a" / "ekf.csv");
  EXPECT_EQ(a, io::read_text(dir_ / "b" / "ekf.csv"));
  EXPECT_NE(a, io::read_text(dir_ / "c" / "ekf.csv"));
}

TEST_F(Cli, RunRejectsCurveLimitAboveMaxSpeed)
{
  write("path.json", R"({"waypoints_enu": [[0,0],[20,0]], "half_width": 0.75})");
  const fs::path cfg =
    write("c.json", "{\n  \"schema_version\": 1,\n  \"path_file\": \"path.json\",\n  \"limits\": {\"v_curve\": 0.8}\n}\n");
  const Result r = run("run --config " + q(cfg));
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("mu"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("c.json:4"), std::string::npos) << r.out;
}

TEST_F(Cli, RunMissingPathFile)
{
  const fs::path cfg = write("c.json", R"({"schema_version": 1, "path_file": "missing.json"})");
  const Result r = run("run --config " + q(cfg));
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("missing.json"), std::string::npos) << r.out;
}

TEST_F(Cli, CheckPathValid)
{
  const Result r = run("check-path " + q(kConfigDir / "three_waypoints_enu.json"));
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("segments 2"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("total length 18.000"), std::string::npos) << r.out;
}

TEST_F(Cli, CheckPathDuplicateWaypoint)
{
  const fs::path p = write("p.json", R"({"waypoints_enu": [[0,0],[5,0],[5,0]], "half_width": 0.75})");
  const Result r = run("check-path " + q(p));
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("DegenerateSegment"), std::string::npos) << r.out;
}

TEST_F(Cli, CheckPathZeroWidth)
{
  const fs::path p = write("p.json", R"({"waypoints_enu": [[0,0],[5,0]], "half_widths": [0]})");
  const Result r = run("check-path " + q(p));
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("NonPositiveWidth"), std::string::npos) << r.out;
}

std::string straight_log(double heading)
{
  std::vector<SensorRow> rows;
  for (int k = 0; k < 100; ++k) {
    const double t = 0.1 * k;
    SensorRow e;
    e.t = t;
    e.kind = SensorKind::Encoder;
    e.v = 0.5;
    e.delta = 0.0;
    rows.push_back(e);
    SensorRow g;
    g.t = t;
    g.z_e = 0.5 * t * std::cos(heading);
    g.z_n = 0.5 * t * std::sin(heading);
    rows.push_back(g);
  }
  return sensor_log_csv(rows);
}

TEST_F(Cli, ReplayStraightLog)
{
  const fs::path log = write("log.csv", straight_log(-1.1));
  const Result r =
    run("replay --config " + q(kConfigDir / "acceptance.json") + " --log " + q(log) + " --out " + q(dir_ / "rp"));
  ASSERT_EQ(r.code, 0) << r.out;
  const auto ekf = io::parse_ekf_csv(io::read_text(dir_ / "rp" / "ekf.csv"));
  ASSERT_FALSE(ekf.empty());
  EXPECT_NEAR(ekf.back().mean.psi, -1.1, 0.02);
  EXPECT_TRUE(fs::exists(dir_ / "rp" / "replay.svg"));
}

TEST_F(Cli, ReplayEmptyLog)
{
  const fs::path log = write("log.csv", std::string(kSensorLogHeader) + "\n");
  const Result r = run("replay --config " + q(kConfigDir / "acceptance.json") + " --log " + q(log) + " --out " +
                       q(dir_ / "rp"));
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("error"), std::string::npos) << r.out;
}

TEST_F(Cli, ReplayOutOfOrderRowIsSkipped)
{
  std::string text = straight_log(0.3);
  text += "0.5,gnss,50,50,,,\n";
  const fs::path log = write("log.csv", text);
  const Result r = run("replay --config " + q(kConfigDir / "acceptance.json") + " --log " + q(log) + " --out " +
                       q(dir_ / "rp"));
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("skipped 1"), std::string::npos) << r.out;
}

}  // namespace
