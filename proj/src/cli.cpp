#include "madic/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "madic/calculus.hpp"
#include "madic/errors.hpp"
#include "madic/geodesics.hpp"
#include "madic/prodense.hpp"
#include "madic/projections.hpp"
#include "madic/serialize.hpp"
#include "madic/suites.hpp"

namespace madic {

namespace {

struct Request {
  std::string command;
  std::optional<int> m;
  std::optional<int> s;
  std::string word;
  std::optional<std::string> vertex;
  std::optional<int> j;
  int depth = 3;
  int radius = 4;
  std::optional<long long> cap;
  std::string suite;
  std::string seed_noise = "empty";
  std::optional<long long> budget_steps;
  std::string out;
  std::string format = "text";
  std::string file;
};

std::optional<long long> env_number(const char* name) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  char* end = nullptr;
  const long long value = std::strtoll(raw, &end, 10);
  if (*end != '\0' || value < 0) {
    throw ParameterMismatch(std::string(name) + " must be a non-negative integer");
  }
  return value;
}

std::string trim(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = text.find_last_not_of(" \t\r\n");
  return text.substr(first, last - first + 1);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterMismatch("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Inline JSON, or the contents of a file holding JSON.
json load_json(const std::string& arg) {
  const std::string text = trim(arg);
  const bool inline_json = !text.empty() && (text.front() == '[' || text.front() == '{');
  const std::string source = inline_json ? text : read_file(text);
  try {
    return json::parse(source);
  } catch (const json::parse_error&) {
    throw ParameterMismatch(inline_json ? "malformed JSON in --word" : "malformed JSON in '" + text + "'");
  }
}

class Session {
 public:
  Session(const Request& request, std::ostream& out) : request_(request), out_(out) {
    if (auto v = env_number("MADIC_BALL_CAP")) ball_cap_ = static_cast<std::size_t>(*v);
    if (auto v = env_number("MADIC_LEVEL_CAP")) level_cap_ = static_cast<std::size_t>(*v);
    if (auto v = env_number("MADIC_BUDGET_STEPS")) budget_.max_equality_tests = static_cast<std::size_t>(*v);
    if (request.budget_steps) budget_.max_equality_tests = static_cast<std::size_t>(*request.budget_steps);
    if (request.format != "text" && request.format != "structured") {
      throw ParameterMismatch("--format must be text or structured");
    }
  }

  int run();

 private:
  bool structured() const { return request_.format == "structured"; }

  GroupParams params_from_flags() const {
    if (!request_.m || !request_.s) throw ParameterMismatch("--m and --s are required");
    return {*request_.m, *request_.s};
  }

  std::pair<GroupParams, Word> load_word() const {
    if (request_.word.empty()) throw ParameterMismatch("--word is required");
    const json j = load_json(request_.word);
    if (j.is_array()) {
      const GroupParams params = params_from_flags();
      Word w = word_from_json(j);
      check_word(params, w);
      return {params, w};
    }
    WordRecord record = parse_word_record(j);
    if ((request_.m && *request_.m != record.params.m) || (request_.s && *request_.s != record.params.s)) {
      throw ParameterMismatch("--m/--s disagree with the word record");
    }
    return {record.params, record.word};
  }

  void emit(const std::string& text) {
    if (request_.out.empty()) {
      out_ << text;
      return;
    }
    std::ofstream file(request_.out);
    if (!file) throw ParameterMismatch("cannot write '" + request_.out + "'");
    file << text;
  }

  void emit_json(const json& j) { emit(j.dump(2) + "\n"); }

  int section_cmd();
  int project_cmd();
  int wordlen_cmd();
  int portrait_cmd();
  int verify_cmd();
  int normalize_cmd();
  int split_cmd();
  int replay_cmd();

  std::vector<Word> seed_noise(const GroupParams& params) const;

  const Request& request_;
  std::ostream& out_;
  std::optional<std::size_t> ball_cap_;
  std::size_t level_cap_ = kDefaultLevelCap;
  Budget budget_;
};

int Session::run() {
  const std::string& c = request_.command;
  if (c == "section") return section_cmd();
  if (c == "project") return project_cmd();
  if (c == "wordlen") return wordlen_cmd();
  if (c == "portrait") return portrait_cmd();
  if (c == "verify") return verify_cmd();
  if (c == "normalize") return normalize_cmd();
  if (c == "split") return split_cmd();
  if (c == "replay") return replay_cmd();
  throw ParameterMismatch("unknown subcommand '" + c + "'");
}

int Session::section_cmd() {
  const auto [params, w] = load_word();
  if (!request_.vertex) throw ParameterMismatch("--vertex is required");
  const Vertex u = Vertex::parse(params, *request_.vertex);
  const Word result = section(params, w, u);
  if (structured()) {
    json j = word_record(params, result);
    j["vertex"] = to_string(u);
    emit_json(j);
  } else {
    emit(to_string(result) + "\n");
  }
  return kExitOk;
}

int Session::project_cmd() {
  const auto [params, w] = load_word();
  if (!request_.j) throw ParameterMismatch("--j is required");
  const Word result = rightmost_projection(params, w, *request_.j);
  if (structured()) {
    json j = word_record(params, result);
    j["j"] = *request_.j;
    emit_json(j);
  } else {
    emit(to_string(result) + "\n");
  }
  return kExitOk;
}

int Session::wordlen_cmd() {
  const auto [params, w] = load_word();
  const int cap = request_.cap ? static_cast<int>(*request_.cap) : static_cast<int>(w.size());
  BallOptions options;
  if (ball_cap_) options.element_cap = *ball_cap_;
  const auto length = geodesic_length(params, w, cap, options);
  if (!length) throw ResourceError("word length exceeds the radius cap " + std::to_string(cap));
  if (structured()) {
    emit_json({{"m", params.m}, {"s", params.s}, {"word", word_to_json(w)}, {"length", *length}});
  } else {
    emit(std::to_string(*length) + "\n");
  }
  return kExitOk;
}

int Session::portrait_cmd() {
  const auto [params, w] = load_word();
  const std::size_t cap = request_.cap ? static_cast<std::size_t>(*request_.cap) : level_cap_;
  const Portrait p = portrait(params, w, request_.depth, cap);
  if (structured()) {
    json vertices = json::array();
    for (std::size_t i = 0; i < p.vertices.size(); ++i) {
      vertices.push_back({{"path", to_string(p.vertices[i])}, {"exponent", p.labels[i]}});
    }
    emit_json({{"m", params.m}, {"s", params.s}, {"depth", p.depth}, {"vertices", vertices}});
    return kExitOk;
  }
  std::ostringstream dot;
  dot << "digraph portrait {\n";
  for (std::size_t i = 0; i < p.vertices.size(); ++i) {
    const std::string path = to_string(p.vertices[i]);
    dot << "  \"v" << path << "\" [label=\"" << path << ":" << p.labels[i] << "\"];\n";
  }
  for (const Vertex& v : p.vertices) {
    if (v.is_root()) continue;
    Vertex parent(std::vector<int>(v.path().begin(), v.path().end() - 1));
    dot << "  \"v" << to_string(parent) << "\" -> \"v" << to_string(v) << "\";\n";
  }
  dot << "}\n";
  emit(dot.str());
  return kExitOk;
}

int Session::verify_cmd() {
  const GroupParams params = params_from_flags();
  if (request_.suite.empty()) throw ParameterMismatch("--suite is required");
  SuiteOptions options;
  options.radius = request_.radius;
  if (ball_cap_) options.ball.element_cap = *ball_cap_;
  if (request_.cap) options.ball.element_cap = static_cast<std::size_t>(*request_.cap);
  const std::vector<LemmaReport> reports = run_suite(params, request_.suite, options);
  const bool ok = std::all_of(reports.begin(), reports.end(), [](const LemmaReport& r) { return r.ok(); });
  if (structured()) {
    json list = json::array();
    for (const LemmaReport& r : reports) list.push_back(report_to_json(r));
    emit_json({{"suite", request_.suite},
               {"m", params.m},
               {"s", params.s},
               {"radius", request_.radius},
               {"reports", list},
               {"ok", ok}});
  } else {
    std::ostringstream text;
    for (const LemmaReport& r : reports) {
      text << r.lemma << ": checked " << r.instances_checked << ", violations " << r.violations.size()
           << ", unverified " << r.unverified << "\n";
      for (std::size_t i = 0; i < std::min<std::size_t>(r.violations.size(), 5); ++i) {
        text << "  " << r.violations[i] << "\n";
      }
    }
    text << (ok ? "ok" : "FAILED") << "\n";
    emit(text.str());
  }
  return ok ? kExitOk : kExitVerificationFailure;
}

int Session::normalize_cmd() {
  const auto [params, w] = load_word();
  const NormalizationWitness witness = normalize_to_permuted_product(params, w, budget_);
  if (structured()) {
    json j = witness_to_json(witness);
    j["m"] = params.m;
    j["s"] = params.s;
    j["input"] = word_to_json(w);
    emit_json(j);
  } else {
    std::ostringstream text;
    text << "vertex: " << to_string(witness.vertex) << "\n"
         << "power exponent: " << witness.exponent_j << "\n"
         << "result: " << to_string(witness.result.word()) << "\n"
         << "certificate length: " << witness.certificate.size() << "\n";
    emit(text.str());
  }
  return kExitOk;
}

std::vector<Word> Session::seed_noise(const GroupParams& params) const {
  const std::string& arg = request_.seed_noise;
  const auto count = static_cast<std::size_t>(params.s + 1);
  if (arg == "empty") return std::vector<Word>(count);
  if (arg == "commutator") {
    std::vector<Word> noise;
    for (int k = 0; k < params.s + 1; ++k) {
      noise.push_back(commutator(Word::generator(k % params.s), Word::generator((k + 1) % params.s)));
    }
    return noise;
  }
  const json j = load_json(arg);
  if (!j.is_array() || j.size() != count) {
    throw ParameterMismatch("--seed-noise needs a list of s+1 words");
  }
  std::vector<Word> noise;
  for (const json& item : j) noise.push_back(word_from_json(item));
  return noise;
}

int Session::split_cmd() {
  const GroupParams params = params_from_flags();
  const std::vector<Word> seeds = make_prodense_seeds(params, seed_noise(params));
  const Transcript t = isolate_generators(params, seeds, budget_);
  if (structured()) {
    emit_json(transcript_to_json(t));
  } else {
    std::ostringstream text;
    for (const Word& w : t.seeds) text << "seed " << to_string(w) << "\n";
    for (const Move& mv : t.moves) {
      text << mv.kind << ": " << mv.detail << (mv.verified ? "" : " [unverified]") << "\n";
    }
    text << "steps: " << t.steps.size() << "\n";
    text << "status: " << t.status;
    if (!t.failure.empty()) text << " (" << t.failure << ")";
    text << "\n";
    if (t.complete()) {
      text << "final vertex: '" << to_string(t.final_vertex) << "'\nfinal parts:";
      for (const Word& w : t.final_words()) text << " " << to_string(w);
      text << "\n";
    }
    emit(text.str());
  }
  if (t.complete()) return kExitOk;
  return t.status == "exhausted" ? kExitResource : kExitVerificationFailure;
}

int Session::replay_cmd() {
  if (request_.file.empty()) throw ParameterMismatch("replay needs a transcript file");
  const Transcript t = transcript_from_json(load_json(request_.file));
  const ReplayReport report = replay(t);
  if (structured()) {
    emit_json({{"steps_checked", report.steps_checked},
               {"status", t.status},
               {"ok", report.ok},
               {"failures", report.failures}});
  } else {
    std::ostringstream text;
    text << "steps checked: " << report.steps_checked << "\n"
         << "transcript status: " << t.status << "\n";
    for (const std::string& f : report.failures) text << "  " << f << "\n";
    text << "replay: " << (report.ok ? "ok" : "FAILED") << "\n";
    emit(text.str());
  }
  return report.ok && t.complete() ? kExitOk : kExitVerificationFailure;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Computations in generalised Basilica groups acting on the m-adic tree", "madic"};
  app.fallthrough();
  app.require_subcommand(1, 1);
  Request request;
  app.add_option("--m", request.m, "tree arity m >= 2");
  app.add_option("--s", request.s, "number of generators s >= 2");
  app.add_option("--word", request.word, "word as [[index,exponent],...], a word record, or a file");
  app.add_option("--vertex", request.vertex, "vertex as a digit string");
  app.add_option("--j", request.j, "projection depth");
  app.add_option("--depth", request.depth, "portrait depth");
  app.add_option("--radius", request.radius, "ball radius or level bound for verify suites");
  app.add_option("--cap", request.cap, "radius cap (wordlen), vertex cap (portrait), element cap (verify)");
  app.add_option("--suite", request.suite, "lengths|congruence|projection|alignment|transitivity|recursions");
  app.add_option("--seed-noise", request.seed_noise, "empty, commutator, or a JSON list of s+1 words");
  app.add_option("--budget-steps", request.budget_steps, "equality-test budget for normalize and split");
  app.add_option("--out", request.out, "write the primary output to this file");
  app.add_option("--format", request.format, "text or structured")->check(CLI::IsMember({"text", "structured"}));

  const std::vector<std::pair<std::string, std::string>> commands{
      {"section", "section of a word at a vertex"},
      {"project", "section of w^(m^j) along the rightmost path"},
      {"wordlen", "geodesic length of a word"},
      {"portrait", "portrait of a word as a graph"},
      {"verify", "run a verification suite"},
      {"normalize", "reduce a word to a permuted product by sections of powers"},
      {"split", "isolate the generators from seeded elements"},
      {"replay", "re-verify a transcript file"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->callback([&request, name = name] { request.command = name; });
    if (name == "replay") sub->add_option("file", request.file, "transcript file")->required();
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    Session session(request, out);
    return session.run();
  } catch (const ParameterMismatch& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const PreconditionError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const NotFound& e) {
    err << "budget exhausted: " << e.what() << "\n";
    return kExitResource;
  } catch (const CertificationError& e) {
    err << "verification failure: " << e.what() << "\n";
    return kExitVerificationFailure;
  }
}

}  // namespace madic
