#include "swarm/orchestrate/persistence.hpp"

#include "swarm/core/error.hpp"

#include <charconv>
#include <sstream>

namespace swarm {

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw Error("cannot format number");
  return std::string(buf, end);
}

CsvLog::CsvLog(const std::filesystem::path& path, const std::string& header) : path_(path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  out_.open(path, std::ios::out | std::ios::trunc);
  if (!out_) throw Error("cannot open " + path.string() + " for writing");
  out_ << header << '\n';
}

void CsvLog::row(const std::string& line) {
  if (completed_) throw Error("write after completion: " + path_.string());
  out_ << line << '\n';
  ++rows_;
}

void CsvLog::complete() {
  if (completed_) return;
  out_ << kFooterMarker << '\n';
  out_.flush();
  completed_ = true;
}

void TrajectoryLog::write_state(double time, const std::vector<Colloid>& colloids, const std::vector<int>& indices) {
  for (std::size_t i = 0; i < colloids.size(); ++i) {
    const Colloid& c = colloids[i];
    std::string line = format_double(time) + ',' + std::to_string(c.id) + ',' + std::to_string(c.type);
    for (int k = 0; k < 3; ++k) line += ',' + format_double(c.pos[k]);
    for (int k = 0; k < 3; ++k) line += ',' + format_double(c.director[k]);
    line += ',' + std::to_string(i < indices.size() ? indices[i] : -1);
    row(line);
  }
}

void RewardLog::write(const EpisodeSummary& s) {
  row(std::to_string(s.episode) + ',' + std::to_string(s.species) + ',' + format_double(s.mean_reward) + ',' +
      format_double(s.cum_reward) + ',' + format_double(s.actor_loss) + ',' + format_double(s.critic_loss) + ',' +
      format_double(s.entropy));
}

CsvContents read_csv(const std::filesystem::path& path, const std::string& header) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != header) throw Error(path.string() + ": unexpected CSV header");
  CsvContents out;
  while (std::getline(in, line)) {
    if (line == kFooterMarker) {
      out.complete = true;
      continue;
    }
    if (line.empty()) continue;
    if (out.complete) throw Error(path.string() + ": data after footer");
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    out.rows.push_back(std::move(fields));
  }
  return out;
}

namespace {

double to_double(const std::string& s) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw Error("malformed number '" + s + "'");
  return v;
}

long long to_integer(const std::string& s) {
  long long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw Error("malformed integer '" + s + "'");
  return v;
}

}  // namespace

std::vector<TrajectoryRow> read_trajectory(const std::filesystem::path& path, bool* complete) {
  const CsvContents csv = read_csv(path, kTrajectoryHeader);
  if (complete) *complete = csv.complete;
  std::vector<TrajectoryRow> rows;
  for (const auto& f : csv.rows) {
    if (f.size() != 10) throw Error(path.string() + ": trajectory row with " + std::to_string(f.size()) + " fields");
    TrajectoryRow r;
    r.time = to_double(f[0]);
    r.id = to_integer(f[1]);
    r.type = static_cast<int>(to_integer(f[2]));
    r.pos = Vec3(to_double(f[3]), to_double(f[4]), to_double(f[5]));
    r.director = Vec3(to_double(f[6]), to_double(f[7]), to_double(f[8]));
    r.action_index = static_cast<int>(to_integer(f[9]));
    rows.push_back(r);
  }
  return rows;
}

std::vector<EpisodeSummary> read_rewards(const std::filesystem::path& path, bool* complete) {
  const CsvContents csv = read_csv(path, kRewardHeader);
  if (complete) *complete = csv.complete;
  std::vector<EpisodeSummary> rows;
  for (const auto& f : csv.rows) {
    if (f.size() != 7) throw Error(path.string() + ": reward row with " + std::to_string(f.size()) + " fields");
    EpisodeSummary s;
    s.episode = static_cast<int>(to_integer(f[0]));
    s.species = static_cast<int>(to_integer(f[1]));
    s.mean_reward = to_double(f[2]);
    s.cum_reward = to_double(f[3]);
    s.actor_loss = to_double(f[4]);
    s.critic_loss = to_double(f[5]);
    s.entropy = to_double(f[6]);
    rows.push_back(s);
  }
  return rows;
}

}  // namespace swarm
