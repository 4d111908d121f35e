#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tatedr/connection.hpp"
#include "tatedr/direct_image.hpp"
#include "tatedr/errors.hpp"
#include "tatedr/exact_weyl.hpp"
#include "tatedr/groebner.hpp"
#include "tatedr/parser.hpp"
#include "tatedr/report.hpp"
#include "tatedr/verify.hpp"
#include "tatedr/weyl.hpp"

namespace {

using nlohmann::ordered_json;
using namespace tatedr;

struct Flags {
    int tPrec = kDefaultTPrecision;
    int xDegMax = 64;
    int xDegStart = 8;
    int dim = 1;
    int ambient = 0;  // direct-image target; 0 means dim + 1
    bool json = false;
    bool pretty = false;
};

OutputMode modeOf(const Flags& f) {
    if (f.pretty) return OutputMode::PrettyJson;
    if (f.json) return OutputMode::Json;
    return OutputMode::Human;
}

RunReport makeReport(const std::string& command, const Flags& f) {
    RunReport r;
    r.command = command;
    r.tPrecision = f.tPrec;
    r.xDegStart = f.xDegStart;
    r.xDegMax = f.xDegMax;
    return r;
}

std::string formatLogNorm(const ValuationBound& v) {
    if (v.value >= kInfValuation / 4) return "infinity";
    return std::to_string(v.value);
}

std::vector<ExactWeyl> parseExactList(const std::vector<std::string>& sources, int varCount) {
    std::vector<ExactWeyl> out;
    out.reserve(sources.size());
    for (const std::string& src : sources) out.push_back(parseExactOperator(src, varCount));
    return out;
}

std::string formatTrajectory(const std::vector<std::array<int, 2>>& steps) {
    std::string out = "[";
    for (std::size_t i = 0; i < steps.size(); ++i) {
        if (i) out += ", ";
        out += "(" + std::to_string(steps[i][0]) + ", " + std::to_string(steps[i][1]) + ")";
    }
    return out + "]";
}

RunReport runEval(const std::string& src, const Flags& f) {
    RunReport r = makeReport("eval", f);
    const WeylOperator op = parseTruncatedOperator(src, f.dim, f.tPrec);
    r.payload["operator"] = op.toString();
    r.payload["varCount"] = f.dim;
    r.payload["order"] = op.order();
    return r;
}

RunReport runNorm(const std::string& src, const Flags& f) {
    RunReport r = makeReport("norm", f);
    const WeylOperator op = parseTruncatedOperator(src, f.dim, f.tPrec);
    const ValuationBound v = op.operatorNorm();
    r.payload["logNorm"] = formatLogNorm(v);
    r.payload["isLowerBound"] = v.isLowerBound;
    if (v.isLowerBound)
        r.warnings.push_back(
            "every visible digit vanished; the reported valuation is only a lower bound");
    return r;
}

RunReport runTranspose(const std::string& src, const Flags& f) {
    RunReport r = makeReport("transpose", f);
    const WeylOperator op = parseTruncatedOperator(src, f.dim, f.tPrec);
    r.payload["operator"] = op.transpose().toString();
    return r;
}

RunReport runInvert(const std::string& src, const Flags& f) {
    RunReport r = makeReport("invert", f);
    const WeylOperator op = parseTruncatedOperator(src, f.dim, f.tPrec);
    r.payload["operator"] = op.invertUnit().toString();
    return r;
}

RunReport runApply(const std::string& opSrc, const std::string& funcSrc, const Flags& f) {
    RunReport r = makeReport("apply", f);
    const WeylOperator op = parseTruncatedOperator(opSrc, f.dim, f.tPrec);
    const WeylOperator funcOp = parseTruncatedOperator(funcSrc, f.dim, f.tPrec);
    if (funcOp.order() > 0)
        throw SyntaxError("the second argument must be a function of x and t (no d-terms)", 0);
    const TateElement func =
        funcOp.coefficientOf(MultiIndex(static_cast<std::size_t>(f.dim), 0));
    r.payload["result"] = op.apply(func).toString();
    return r;
}

RunReport runDr(const std::string& src, const Flags& f) {
    RunReport r = makeReport("dr", f);
    if (f.dim != 1)
        throw SyntaxError("the dr command works on the one-variable disc; use --dim 1", 0);
    const WeylOperator relation = parseTruncatedOperator(src, 1, f.tPrec);
    const DrReport rep = drCohomology(CyclicModule{relation}, f.xDegStart, f.xDegMax);
    r.payload["h0"] = rep.h0;
    r.payload["h1"] = rep.h1;
    r.payload["chi"] = rep.chi();
    r.payload["stabilized"] = rep.stabilized;
    r.payload["reliable"] = rep.reliable;
    r.payload["degreeWindow"] = rep.degreeWindow;
    if (!rep.stabilized)
        r.warnings.push_back("dimensions did not stabilize across successive degree windows; "
                             "trajectory " +
                             formatTrajectory(rep.trajectory));
    if (!rep.reliable)
        r.warnings.push_back(
            "a rank decision reached the t-precision floor; dimensions may be unreliable");
    return r;
}

ordered_json charVarietyPayload(const CharVarietyReport& rep) {
    ordered_json out;
    out["holonomic"] = rep.holonomic;
    out["charDimension"] = rep.charDimension;
    out["moduleIsZero"] = rep.moduleIsZero;
    ordered_json gens = ordered_json::array();
    for (const auto& g : rep.initialIdealGenerators) gens.push_back(g.toString());
    out["initialIdeal"] = gens;
    return out;
}

RunReport runHolonomic(const std::vector<std::string>& sources, const Flags& f, bool full) {
    RunReport r = makeReport(full ? "char-dim" : "holonomic", f);
    FilteredPresentation p;
    p.varCount = f.dim;
    p.relations = parseExactList(sources, f.dim);
    const CharVarietyReport rep = analyzeCharVariety(p);
    if (full) {
        r.payload = charVarietyPayload(rep);
    } else {
        r.payload["holonomic"] = rep.holonomic;
        r.payload["charDimension"] = rep.charDimension;
    }
    ordered_json rels = ordered_json::array();
    for (const ExactWeyl& rel : p.relations) rels.push_back(rel.toString());
    r.payload["relations"] = rels;
    return r;
}

RunReport runDirectImage(const std::vector<std::string>& sources, const Flags& f) {
    RunReport r = makeReport("direct-image", f);
    const int ambient = f.ambient > 0 ? f.ambient : f.dim + 1;
    const EmbeddingData e(f.dim, ambient);
    const FilteredPresentation pushed =
        pushforwardPresentation(parseExactList(sources, f.dim), e);
    r.payload["sourceDim"] = e.sourceDim;
    r.payload["ambientDim"] = e.ambientDim;
    ordered_json rels = ordered_json::array();
    for (const ExactWeyl& rel : pushed.relations) rels.push_back(rel.toString());
    r.payload["relations"] = rels;
    const CharVarietyReport rep = analyzeCharVariety(pushed);
    r.payload["holonomic"] = rep.holonomic;
    r.payload["charDimension"] = rep.charDimension;
    return r;
}

RunReport runVerifyCommand(const std::string& selector, const Flags& f) {
    RunReport r = makeReport("verify", f);
    const std::vector<SuiteReport> suites = runVerify(selector);
    bool allPass = true;
    ordered_json list = ordered_json::array();
    for (const SuiteReport& suite : suites) {
        allPass = allPass && suite.pass;
        ordered_json s;
        s["suite"] = suite.suite;
        s["pass"] = suite.pass;
        ordered_json checks = ordered_json::array();
        for (const CheckResult& c : suite.checks) {
            ordered_json entry;
            entry["name"] = c.name;
            entry["pass"] = c.pass;
            entry["detail"] = c.detail;
            checks.push_back(entry);
        }
        s["checks"] = checks;
        list.push_back(s);
    }
    r.payload["suites"] = list;
    r.payload["allPass"] = allPass;
    if (!allPass) {
        r.warnings.push_back("at least one verification check failed");
        r.exitStatus = 1;
    }
    return r;
}

RunReport errorReport(const std::string& command, const Flags& f, const std::string& type,
                      const std::string& message, int exitStatus) {
    RunReport r = makeReport(command.empty() ? "error" : command, f);
    r.payload["error"]["type"] = type;
    r.payload["error"]["message"] = message;
    r.exitStatus = exitStatus;
    return r;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact calculator for differential operators with Laurent-series "
                 "coefficients on closed polydiscs"};
    app.require_subcommand(1);

    Flags fl;
    app.add_option("--t-prec", fl.tPrec, "working t-adic precision (digits kept past the leading "
                                         "valuation)")
        ->check(CLI::PositiveNumber);
    app.add_option("--x-deg-max", fl.xDegMax, "largest x-degree window tried during stabilization")
        ->check(CLI::PositiveNumber);
    app.add_option("--x-deg-start", fl.xDegStart, "first x-degree window tried")
        ->check(CLI::PositiveNumber);
    app.add_option("--dim", fl.dim, "number of coordinate variables the expressions live in")
        ->check(CLI::PositiveNumber);
    app.add_option("--ambient", fl.ambient,
                   "target variable count for direct-image (default: --dim + 1)")
        ->check(CLI::PositiveNumber);
    app.add_flag("--json", fl.json, "emit the report as compact JSON");
    app.add_flag("--pretty", fl.pretty, "emit the report as indented JSON");

    std::string expr;
    std::string funcExpr;
    std::string selector = "all";
    std::vector<std::string> exprs;

    CLI::App* evalCmd = app.add_subcommand("eval", "parse an operator and print its normal form");
    evalCmd->add_option("expr", expr, "operator expression")->required();

    CLI::App* normCmd = app.add_subcommand("norm", "log of the operator norm (t-adic valuation)");
    normCmd->add_option("expr", expr, "operator expression")->required();

    CLI::App* transposeCmd = app.add_subcommand("transpose", "formal transpose of an operator");
    transposeCmd->add_option("expr", expr, "operator expression")->required();

    CLI::App* invertCmd =
        app.add_subcommand("invert", "inverse of an operator that is a unit at this precision");
    invertCmd->add_option("expr", expr, "operator expression")->required();

    CLI::App* applyCmd = app.add_subcommand("apply", "apply an operator to a function");
    applyCmd->add_option("operator", expr, "operator expression")->required();
    applyCmd->add_option("function", funcExpr, "function of x and t (no d-terms)")->required();

    CLI::App* drCmd = app.add_subcommand(
        "dr", "kernel/cokernel dimensions of the connection defined by a one-variable relation");
    drCmd->add_option("expr", expr, "relation in one variable")->required();

    CLI::App* holonomicCmd =
        app.add_subcommand("holonomic", "holonomicity of the module cut out by relations");
    holonomicCmd->add_option("exprs", exprs, "relation expressions")->required();

    CLI::App* charDimCmd = app.add_subcommand(
        "char-dim", "characteristic-variety dimension and initial ideal of the relations");
    charDimCmd->add_option("exprs", exprs, "relation expressions")->required();

    CLI::App* directImageCmd = app.add_subcommand(
        "direct-image", "push the relations forward along the coordinate embedding");
    directImageCmd->add_option("exprs", exprs, "relation expressions")->required();

    CLI::App* verifyCmd =
        app.add_subcommand("verify", "run a named verification suite (or \"all\")");
    verifyCmd->add_option("suite", selector, "suite name; see --list");
    bool listSuites = false;
    verifyCmd->add_flag("--list", listSuites, "list available suite names and exit");

    for (CLI::App* sub : {evalCmd, normCmd, transposeCmd, invertCmd, applyCmd, drCmd,
                          holonomicCmd, charDimCmd, directImageCmd, verifyCmd})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    std::string command;
    RunReport report;
    try {
        if (app.got_subcommand(evalCmd)) {
            command = "eval";
            report = runEval(expr, fl);
        } else if (app.got_subcommand(normCmd)) {
            command = "norm";
            report = runNorm(expr, fl);
        } else if (app.got_subcommand(transposeCmd)) {
            command = "transpose";
            report = runTranspose(expr, fl);
        } else if (app.got_subcommand(invertCmd)) {
            command = "invert";
            report = runInvert(expr, fl);
        } else if (app.got_subcommand(applyCmd)) {
            command = "apply";
            report = runApply(expr, funcExpr, fl);
        } else if (app.got_subcommand(drCmd)) {
            command = "dr";
            report = runDr(expr, fl);
        } else if (app.got_subcommand(holonomicCmd)) {
            command = "holonomic";
            report = runHolonomic(exprs, fl, false);
        } else if (app.got_subcommand(charDimCmd)) {
            command = "char-dim";
            report = runHolonomic(exprs, fl, true);
        } else if (app.got_subcommand(directImageCmd)) {
            command = "direct-image";
            report = runDirectImage(exprs, fl);
        } else {
            command = "verify";
            if (listSuites) {
                report = makeReport("verify", fl);
                report.payload["suites"] = verifySuiteNames();
            } else {
                report = runVerifyCommand(selector, fl);
            }
        }
    } catch (const SyntaxError& e) {
        report = errorReport(command, fl, "syntax", e.what(), 2);
    } catch (const IndexOutOfRangeError& e) {
        report = errorReport(command, fl, "index-out-of-range", e.what(), 2);
    } catch (const NotAUnitError& e) {
        report = errorReport(command, fl, "not-a-unit", e.what(), 1);
    } catch (const MathError& e) {
        report = errorReport(command, fl, "math", e.what(), 1);
    } catch (const std::invalid_argument& e) {
        report = errorReport(command, fl, "usage", e.what(), 2);
    }

    std::cout << renderReport(report, modeOf(fl));
    return report.exitStatus;
}
