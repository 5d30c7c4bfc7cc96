// Command-line driver: runs one computation per invocation, described either
// by a JSON job file (`mbgg run job.json`) or by per-command flags.  Results
// are printed as aligned text tables, as JSON, or both.
//
// Exit codes: 0 success; 2 file/format/schema errors; 3 algebraic errors
// (inhomogeneous input, non-square-zero differential, ...); 4 iteration
// budget exhausted before a computation completed (partial output is still
// emitted).

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mbgg/diffmod.hpp"
#include "mbgg/io.hpp"
#include "mbgg/resolution.hpp"

namespace {

using mbgg::Json;

struct RunOutput {
  Json doc;
  std::string text;
  int exitCode = 0;
};

int intOption(const Json& opts, const char* key, int fallback) {
  if (!opts.contains(key)) return fallback;
  return mbgg::getInt(opts[key], std::string("options.") + key);
}

mbgg::RingPtr resolveRing(const Json& job, const Json& payload) {
  if (payload.is_object() && payload.contains("ring"))
    return mbgg::ringFromAny(payload["ring"], "payload.ring");
  if (job.contains("ring") && !job["ring"].is_null())
    return mbgg::ringFromAny(job["ring"], "ring");
  throw mbgg::IoError(
      "no ring specified: give a job-level \"ring\" or embed one in the payload");
}

Json flagToJson(const mbgg::FlagDM& F) {
  Json j = mbgg::dmToJson(F.dm);
  j["blockSizes"] = F.blockSizes;
  return j;
}

// Payloads for module-consuming commands may wrap the module in
// {"extOf": {"module": ..., "index": i, "twist": [c]}} to run the
// computation on an Ext module of the given input.
mbgg::PresentedModule modulePayload(const mbgg::RingPtr& S, const Json& payload,
                                    const std::string& where) {
  if (payload.contains("extOf")) {
    const Json& je = payload["extOf"];
    std::string w = where + ".extOf";
    mbgg::PresentedModule inner =
        mbgg::moduleFromJson(S, mbgg::getField(je, "module", w), w + ".module");
    int idx = mbgg::getInt(mbgg::getField(je, "index", w), w + ".index");
    mbgg::Multidegree c =
        je.contains("twist")
            ? mbgg::degreeFromJson(je["twist"], S->degreeRank(), w + ".twist")
            : mbgg::Multidegree::zero(S->degreeRank());
    return mbgg::extModule(inner, idx, c);
  }
  return mbgg::moduleFromJson(S, payload, where);
}

RunOutput runJob(const Json& job) {
  mbgg::requireSchema(job, "job");
  std::string cmd =
      mbgg::getString(mbgg::getField(job, "command", "job"), "job.command");
  Json payload = job.contains("payload") ? job["payload"] : Json::object();
  Json opts = job.contains("options") && job["options"].is_object() ? job["options"]
                                                                    : Json::object();

  RunOutput out;
  out.doc["schema"] = mbgg::kSchemaVersion;
  out.doc["command"] = cmd;
  Json result;
  std::ostringstream text;

  if (cmd == "res-dm") {
    mbgg::RingPtr S = resolveRing(job, payload);
    mbgg::DifferentialModule D = mbgg::dmFromJson(S, payload, "payload");
    int maxIter = intOption(opts, "maxIter", mbgg::defaultResDMIterations(D));
    mbgg::ResDMResult R = mbgg::resDM(D, maxIter);
    result["schema"] = mbgg::kSchemaVersion;
    result["complete"] = R.complete;
    result["flag"] = flagToJson(R.flag);
    result["eps"] = mbgg::matrixToJson(R.eps);
    text << mbgg::renderFlagText(R.flag);
    text << "comparison map to the input:\n" << mbgg::renderMatrixText(R.eps);
    text << (R.complete ? "resolution complete\n"
                        : "iteration budget exhausted; result is partial\n");
    if (!R.complete) out.exitCode = 4;
  } else if (cmd == "minimize-dm") {
    mbgg::RingPtr S = resolveRing(job, payload);
    mbgg::DifferentialModule D = mbgg::dmFromJson(S, payload, "payload");
    mbgg::DifferentialModule M = mbgg::minimizeDM(D);
    result = mbgg::dmToJson(M);
    text << mbgg::renderDMText(M);
  } else if (cmd == "res-min-flag") {
    mbgg::RingPtr S = resolveRing(job, payload);
    mbgg::DifferentialModule D = mbgg::dmFromJson(S, payload, "payload");
    int t = intOption(opts, "iterations", S->nvars() + 1);
    mbgg::FlagDM F = mbgg::resMinFlag(D, t);
    result = flagToJson(F);
    text << mbgg::renderFlagText(F);
  } else if (cmd == "toric-ll") {
    mbgg::RingPtr S = resolveRing(job, payload);
    mbgg::ExtPtr E = mbgg::dualRingToric(S);
    mbgg::EModuleGraded N = mbgg::emoduleFromJson(E, payload, "payload");
    mbgg::FComplex C = mbgg::toricLL(N);
    result = mbgg::complexToJson(C);
    text << mbgg::renderComplexText(C);
  } else if (cmd == "toric-rr") {
    mbgg::RingPtr S = resolveRing(job, payload);
    mbgg::PresentedModule M = modulePayload(S, payload, "payload");
    mbgg::ToricRRResult R =
        opts.contains("degreeList")
            ? mbgg::toricRRLabeled(M, mbgg::twistsFromJson(opts["degreeList"],
                                                           S->degreeRank(),
                                                           "options.degreeList"))
            : mbgg::toricRRLabeled(M);
    result = mbgg::edmToJson(R.dm);
    result["generatorDegrees"] = mbgg::twistsToJson(R.genDegrees);
    result["generatorBasisIndex"] = R.genBasisIndex;
    text << mbgg::renderEDMText(R.dm);
  } else if (cmd == "linear-strand") {
    mbgg::RingPtr S = resolveRing(job, payload);
    mbgg::PresentedModule M = modulePayload(S, payload, "payload");
    mbgg::StrandResult R = mbgg::stronglyLinearStrand(M);
    result = mbgg::strandToJson(R);
    text << mbgg::renderStrandText(R);
  } else if (cmd == "free-res") {
    mbgg::RingPtr S = resolveRing(job, payload);
    mbgg::PresentedModule M = modulePayload(S, payload, "payload");
    int len = intOption(opts, "iterations", S->nvars() + 1);
    mbgg::FComplex C = mbgg::minimalFreeResolution(M, len);
    result = mbgg::complexToJson(C);
    text << mbgg::renderComplexText(C);
  } else if (cmd == "ext") {
    mbgg::RingPtr S = resolveRing(job, payload);
    mbgg::PresentedModule M = modulePayload(S, payload, "payload");
    int idx = intOption(opts, "index", -1);
    if (idx < 0)
      throw mbgg::IoError("ext needs options.index >= 0 (flag --index)");
    mbgg::Multidegree c =
        opts.contains("twist")
            ? mbgg::degreeFromJson(opts["twist"], S->degreeRank(), "options.twist")
            : mbgg::Multidegree::zero(S->degreeRank());
    mbgg::PresentedModule X = mbgg::extModule(M, idx, c);
    result = mbgg::moduleToJson(X);
    text << mbgg::renderModuleText(X);
  } else if (cmd == "graded-piece") {
    mbgg::RingPtr S = resolveRing(job, payload);
    mbgg::PresentedModule M = modulePayload(S, payload, "payload");
    if (!opts.contains("degreeList"))
      throw mbgg::IoError(
          "graded-piece needs options.degreeList (flag --degree-list)");
    std::vector<mbgg::Multidegree> degs = mbgg::twistsFromJson(
        opts["degreeList"], S->degreeRank(), "options.degreeList");
    result["schema"] = mbgg::kSchemaVersion;
    Json pieces = Json::array();
    for (const mbgg::Multidegree& d : degs) {
      mbgg::GradedPiece P(M, d);
      Json p;
      p["degree"] = mbgg::degreeToJson(d);
      p["dim"] = P.dim();
      Json basis = Json::array();
      text << "degree " << mbgg::braceDegree(d) << ": dim " << P.dim() << '\n';
      for (int k : P.basisPairs()) {
        const auto& [g, e] = P.pairs()[k];
        std::string mono = mbgg::Polynomial::monomial(S, e, mbgg::Scalar(1)).str();
        Json b;
        b["gen"] = g;
        b["monomial"] = mono;
        basis.push_back(std::move(b));
        text << "  [" << g << "] " << mono << '\n';
      }
      p["basis"] = std::move(basis);
      pieces.push_back(std::move(p));
    }
    result["pieces"] = std::move(pieces);
  } else {
    throw mbgg::IoError(
        "unknown command \"" + cmd +
        "\" (known: res-dm, minimize-dm, res-min-flag, toric-ll, toric-rr, "
        "linear-strand, free-res, ext, graded-piece)");
  }

  out.doc["result"] = std::move(result);
  out.text = text.str();
  return out;
}

void emit(const RunOutput& out, const std::string& format, const std::string& outFile) {
  std::string body;
  if (format == "text")
    body = out.text;
  else if (format == "json")
    body = out.doc.dump(2) + "\n";
  else if (format == "both")
    body = out.text + out.doc.dump(2) + "\n";
  else
    throw mbgg::IoError("unknown format \"" + format + "\" (text|json|both)");
  if (outFile.empty())
    std::cout << body;
  else
    mbgg::writeTextFile(outFile, body);
}

struct Flags {
  std::string ringFile, builtin, dmFile, moduleFile, degreeListFile;
  std::string format = "text", outFile;
  int maxIter = -1, iterations = -1, index = -1;
};

Json degreeListFromFile(const std::string& path) {
  Json j = mbgg::loadJsonFile(path);
  if (j.is_array()) return j;
  if (j.is_object() && j.contains("degrees")) {
    mbgg::requireSchema(j, path);
    return j["degrees"];
  }
  throw mbgg::IoError(path + ": expected an array of degree vectors or "
                      "{\"schema\": 1, \"degrees\": [...]}");
}

// Assemble a job document from command-line flags, mirroring the job-file
// format so both entry points share one execution path.
Json jobFromFlags(const std::string& cmd, const Flags& fl) {
  Json job;
  job["schema"] = mbgg::kSchemaVersion;
  job["command"] = cmd;
  if (!fl.ringFile.empty()) {
    job["ring"] = mbgg::loadJsonFile(fl.ringFile);
  } else if (!fl.builtin.empty()) {
    job["ring"] = fl.builtin;
  }

  bool wantsDM =
      cmd == "res-dm" || cmd == "minimize-dm" || cmd == "res-min-flag";
  if (wantsDM) {
    if (fl.dmFile.empty())
      throw mbgg::IoError(cmd + " needs --dm FILE (a differential-module JSON file)");
    Json p = mbgg::loadJsonFile(fl.dmFile);
    mbgg::requireSchema(p, fl.dmFile);
    job["payload"] = std::move(p);
  } else {
    if (fl.moduleFile.empty())
      throw mbgg::IoError(cmd + " needs --module FILE (a module JSON file)");
    Json p = mbgg::loadJsonFile(fl.moduleFile);
    mbgg::requireSchema(p, fl.moduleFile);
    job["payload"] = std::move(p);
  }

  Json opts = Json::object();
  if (fl.maxIter >= 0) opts["maxIter"] = fl.maxIter;
  if (fl.iterations >= 0) opts["iterations"] = fl.iterations;
  if (fl.index >= 0) opts["index"] = fl.index;
  if (!fl.degreeListFile.empty()) {
    Json degs = degreeListFromFile(fl.degreeListFile);
    if (cmd == "ext") {
      if (!degs.is_array() || degs.empty())
        throw mbgg::IoError("--degree-list for ext must hold one twist vector");
      opts["twist"] = degs[0];
    } else {
      opts["degreeList"] = std::move(degs);
    }
  }
  if (!opts.empty()) job["options"] = std::move(opts);
  return job;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graded differential modules, dual exterior complexes, and "
               "strongly linear strands"};
  app.require_subcommand(1);

  std::string jobPath;
  Flags fl;
  std::vector<std::pair<std::string, CLI::App*>> cmds;

  CLI::App* run = app.add_subcommand("run", "execute a JSON job file");
  run->add_option("jobfile", jobPath, "job file")->required();
  run->add_option("--format", fl.format, "output format: text|json|both");
  run->add_option("--out", fl.outFile, "write output to a file instead of stdout");

  auto addCommand = [&](const std::string& name, const std::string& help,
                        bool dmInput) {
    CLI::App* c = app.add_subcommand(name, help);
    c->add_option("--ring", fl.ringFile, "ring JSON file");
    c->add_option("--builtin", fl.builtin,
                  "builtin ring, e.g. \"standard 2\", \"hirzebruch 3\", "
                  "\"weighted-projective [1,1,2]\"");
    if (dmInput)
      c->add_option("--dm", fl.dmFile, "differential-module JSON file");
    else
      c->add_option("--module", fl.moduleFile, "module JSON file");
    c->add_option("--degree-list", fl.degreeListFile, "degree-list JSON file");
    c->add_option("--max-iter", fl.maxIter, "iteration budget");
    c->add_option("--iterations", fl.iterations, "iteration/length parameter");
    c->add_option("--index", fl.index, "cohomological index (ext)");
    c->add_option("--format", fl.format, "output format: text|json|both");
    c->add_option("--out", fl.outFile, "write output to a file instead of stdout");
    cmds.emplace_back(name, c);
    return c;
  };

  addCommand("res-dm", "free flag resolution of a differential module", true);
  addCommand("minimize-dm", "minimal model of a differential module", true);
  addCommand("res-min-flag", "minimal free flag resolution by iterated strands", true);
  addCommand("toric-ll", "linear complex of a module over the dual exterior algebra",
             false);
  addCommand("toric-rr", "dual exterior differential module of a graded module",
             false);
  addCommand("linear-strand", "strongly linear strand of a graded module", false);
  addCommand("free-res", "minimal free resolution", false);
  addCommand("ext", "Ext module against a twist of the ring", false);
  addCommand("graded-piece", "bases of graded pieces of a module", false);

  CLI11_PARSE(app, argc, argv);

  try {
    Json job;
    std::string format = fl.format;
    if (run->parsed()) {
      job = mbgg::loadJsonFile(jobPath);
      if (run->count("--format") == 0 && job.contains("format"))
        format = mbgg::getString(job["format"], "job.format");
    } else {
      for (const auto& [name, sub] : cmds)
        if (sub->parsed()) {
          job = jobFromFlags(name, fl);
          break;
        }
    }
    RunOutput out = runJob(job);
    emit(out, format, fl.outFile);
    return out.exitCode;
  } catch (const mbgg::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const mbgg::Json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const mbgg::AlgebraError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
