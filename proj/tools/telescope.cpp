#include <iostream>

#include "CLI11.hpp"

#include "algtel/cli.hpp"

int main(int argc, char** argv) {
  algtel::cli::Options o;
  CLI::App app{"Minimal telescopers for algebraic functions f(x, y) with m(x, y) = 0 over Q(t)"};
  app.add_option("--m", o.m, "minimal polynomial m(x, y) in x, y, t")->required();
  app.add_option("--f", o.f, "integrand f as an expression in x, y, t")->required();
  app.add_option("--approach", o.approach, "hermite | polyred | both")
      ->check(CLI::IsMember({"hermite", "polyred", "both"}))
      ->capture_default_str();
  app.add_flag("--certificate", o.certificate, "also compute g with L(f) = dg/dx");
  app.add_flag("--verify", o.verify, "check the result exactly");
  app.add_flag("--json", o.json, "line-delimited JSON on stdout");
  app.add_option("--basis", o.basis, "auto | standard | file")
      ->check(CLI::IsMember({"auto", "standard", "file"}))
      ->capture_default_str();
  app.add_option("--basis-file", o.basis_file, "basis elements, one per line");
  app.add_option("--max-order", o.max_order, "largest telescoper order to try")->capture_default_str();
  app.add_option("--seed", o.seed, "seed for random specializations (TELESCOPE_SEED overrides)")
      ->capture_default_str();
  std::string point;
  auto* rp = app.add_option("--regular-point", point, "point a moved to infinity by the Hermite approach");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return algtel::cli::kInputError;
  }
  if (rp->count() > 0) o.regular_point = point;
  return algtel::cli::run(o, std::cout, std::cerr);
}
