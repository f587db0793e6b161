# ===============================================================================
# File: qcenter.py
# Description: Main execution script for QCenter (classify, batch, corpus, invariants)
# Notes: run from QCenter/src, e.g. python qcenter.py classify "0,0,1,1,0,0,0,-1,0,0,0,0"
# ===============================================================================

# Standard library imports
import concurrent.futures
import sys

# Local module imports
from classifier import count_centers
from config import QCenterConfig
from errors import QCenterError, RecordParseError
from families import family_corpus, run_regressions
from invariants import AffineInvariants, identity_checks, invariant_table
from oracle import oracle_center_count
from report import ReportDocument, build_summary, invariant_table_to_dict, make_entry, write_summary_csv
from system import parse_coefficients
from utils import FileHandler

COMMANDS = ("classify", "batch", "corpus", "invariants")
VALUE_FLAGS = ("--format", "--jobs", "--seed", "--count", "--family", "--csv")
SWITCHES = ("--oracle", "--invariants", "--quiet", "--no-error-file")


class UsageError(QCenterError):
    """Command line that cannot be acted upon"""


def _hamiltonian_mismatch(report, verdict):
    """For a Hamiltonian system every simple real point with positive determinant is a center"""
    if not isinstance(report.center_count, int):
        return None
    expected = sum(1 for p in verdict.points
                   if p.is_real and p.multiplicity == 1 and p.delta > QCenterConfig.NUMERIC_ZERO)
    if expected == report.center_count:
        return None
    return f"{expected} simple points with positive determinant, classifier reports {report.center_count} centers"


def evaluate_record(task):
    """Worker: classify one system and optionally run the oracle; returns (index, entry, errors, identity failures)"""
    index, record_id, system, family, options = task
    errors, failed_identities = [], []
    try:
        inv = AffineInvariants(system)
        report = count_centers(system, inv)

        checks = None
        if options.get("identities") or options.get("invariants"):
            checks = identity_checks(system, inv)
            for name, holds in checks.items():
                if not holds:
                    failed_identities.append(f"{record_id}: {name}")
                    errors.append(f"{record_id}: identity {name} does not hold")
        table = invariant_table_to_dict(invariant_table(system, inv), checks) if options.get("invariants") else None

        verdict = None
        if options.get("oracle"):
            if report.set_index == "M19":
                report.diagnostics.append("oracle skipped: singular points are not isolated")
            else:
                verdict = oracle_center_count(system)
                if family == "hamiltonian":
                    mismatch = _hamiltonian_mismatch(report, verdict)
                    if mismatch:
                        errors.append(f"{record_id}: {mismatch}")

        entry = make_entry(record_id, system, family, report, table, verdict)
        if entry["agreement"] is False:
            errors.append(f"{record_id}: classifier reports {report.center_count} centers "
                          f"({report.fired_rule}), oracle reports {verdict.center_count}")
        return index, entry, errors, failed_identities
    except QCenterError as e:
        message = f"{type(e).__name__}: {e}"
        return index, make_entry(record_id, system, family, error=message), [f"{record_id}: {message}"], []


class QCenter:
    def __init__(self, argv=None):
        self.argv = list(sys.argv[1:] if argv is None else argv)
        self.erro = []
        self.command = None
        self.positional = []
        self.options = {}
        self.format = "text"
        self.quiet = False
        self.jobs = 1

    def run(self):
        """Main execution method for QCenter; returns the process exit code"""
        if self._handle_help_and_version():
            return QCenterConfig.EXIT_OK
        try:
            self._parse_arguments()
        except UsageError as e:
            print(f"❌ {e}", file=sys.stderr)
            print("Run 'python qcenter.py -h' for the list of commands and flags.", file=sys.stderr)
            return QCenterConfig.EXIT_INPUT_ERROR

        handler = {
            "classify": self._cmd_classify,
            "invariants": self._cmd_invariants,
            "batch": self._cmd_batch,
            "corpus": self._cmd_corpus,
        }[self.command]
        code = handler()
        self._print_final_messages()
        return code

    def _handle_help_and_version(self):
        """Handle version and help commands; True when nothing else should run"""
        if "-v" in self.argv or "--version" in self.argv:
            print("-----------------------------------------------")
            print("QCenter - centers of planar quadratic systems")
            print("version " + QCenterConfig.VERSION)
            print("-----------------------------------------------")
            return True
        if not self.argv or "-h" in self.argv or "--help" in self.argv:
            self._print_help()
            return True
        return False

    def _print_help(self):
        """Print help information"""
        print('''
Hello user!

QCenter counts the centers of a planar quadratic system
    x' = p00 + p10 x + p01 y + p20 x^2 + p11 xy + p02 y^2
    y' = q00 + q10 x + q01 y + q20 x^2 + q11 xy + q02 y^2
from affine invariants of its coefficients, using exact rational arithmetic.

Usage:
    python qcenter.py classify "p00,p10,p01,p20,p11,p02,q00,q10,q01,q20,q11,q02" [flags]
    python qcenter.py invariants "<12 coefficients>" [flags]
    python qcenter.py batch <file> [flags]
    python qcenter.py corpus [flags]

Commands:
    classify      Singular-point set M1..M19, center count and the rule that decided it
    invariants    Full invariant table (A1..A26, C1..C12, E1, E2, I-invariants, comitants)
    batch         Every record of a file (one 12-tuple per line, or a JSON array)
    corpus        Built-in families checked against the singular-point oracle

Flags:
    --format json|text   Report format (default: text)
    --oracle             Cross-check with the singular-point oracle
    --invariants         Attach the invariant table to each record
    --jobs N             Worker processes for batch and corpus (default: 1, 0 = one per CPU)
    --seed S             Seed of the corpus families (default: 0)
    --count N            Systems per family in the corpus (default: 25)
    --family F[,F...]    Corpus families: canonical, hamiltonian, reversible,
                         placed-points, random (default: all)
    --csv PATH           Write the summary table as a ';'-separated file
    --quiet              No status lines
    --no-error-file      Do not write the qcenter_error_<date>.err file
    -v, --version        Show version
    -h, --help           Show this help

Coefficients are exact rationals: "3/7", "-2", "0". Floats are refused.

Exit codes: 0 success, 1 failed record or disagreement, 2 input error.
''')

    # -- argument parsing ----------------------------------------------------

    def _parse_arguments(self):
        args = list(self.argv)
        if not args or args[0] not in COMMANDS:
            raise UsageError(f"unknown command {args[0]!r}" if args else "no command given")
        self.command = args.pop(0)
        while args:
            token = args.pop(0)
            if token in SWITCHES:
                self.options[token] = True
            elif token in VALUE_FLAGS:
                if not args:
                    raise UsageError(f"{token} needs a value")
                self.options[token] = args.pop(0)
            elif token.startswith("--"):
                raise UsageError(f"unknown flag {token}")
            else:
                self.positional.append(token)

        self.format = self.options.get("--format", "text")
        if self.format not in ("json", "text"):
            raise UsageError(f"--format must be json or text, not {self.format!r}")
        self.quiet = bool(self.options.get("--quiet"))
        self.jobs = self._int_option("--jobs", 1, minimum=0) or QCenterConfig.default_jobs()
        self.seed = self._int_option("--seed", QCenterConfig.DEFAULT_SEED)
        self.count = self._int_option("--count", QCenterConfig.DEFAULT_CORPUS_COUNT, minimum=0)
        families = self.options.get("--family")
        self.families = tuple(f.strip() for f in families.split(",")) if families else QCenterConfig.FAMILIES
        unknown = [f for f in self.families if f not in QCenterConfig.FAMILIES]
        if unknown:
            raise UsageError(f"unknown family {', '.join(unknown)}; choose from {', '.join(QCenterConfig.FAMILIES)}")

        if self.command in ("classify", "invariants", "batch") and not self.positional:
            raise UsageError(f"{self.command} needs " + ("a file" if self.command == "batch" else "a record"))

    def _int_option(self, flag, default, minimum=None):
        value = self.options.get(flag)
        if value is None:
            return default
        try:
            number = int(value)
        except ValueError:
            raise UsageError(f"{flag} expects an integer, got {value!r}") from None
        if minimum is not None and number < minimum:
            raise UsageError(f"{flag} must be at least {minimum}")
        return number

    # -- output --------------------------------------------------------------

    def _log(self, message):
        """Status line; stderr when stdout carries the JSON report"""
        if self.quiet:
            return
        print(message, file=sys.stderr if self.format == "json" else sys.stdout)

    def _emit(self, document):
        if self.format == "json":
            print(document.to_json())
        else:
            print(document.to_text(), end="")
        csv_path = self.options.get("--csv")
        if csv_path:
            write_summary_csv(document.records, csv_path)
            self._log(f"✅ Summary table written to {csv_path}")

    def _print_final_messages(self):
        """Report collected errors and write the error file"""
        if self.erro:
            self._log("\nNumber of errors reported: " + str(len(self.erro)))
            if not self.options.get("--no-error-file"):
                final_erro = FileHandler.write_error_file(self.erro)
                self._log("Please check the " + str(final_erro) + " file.\n")
        else:
            self._log("\nNo error reported!")

    # -- evaluation ----------------------------------------------------------

    def _record_options(self, **extra):
        options = {"oracle": bool(self.options.get("--oracle")),
                   "invariants": bool(self.options.get("--invariants"))}
        options.update(extra)
        return options

    def _evaluate_all(self, tasks):
        """Run evaluate_record over tasks, keeping input order for any job count"""
        results = [None] * len(tasks)
        if self.jobs <= 1 or len(tasks) <= 1:
            for i, task in enumerate(tasks):
                results[i] = evaluate_record(task)
                self._progress(i + 1, len(tasks), results[i])
            return results

        with concurrent.futures.ProcessPoolExecutor(max_workers=self.jobs) as executor:
            futures = {executor.submit(evaluate_record, task): task[0] for task in tasks}
            for done, future in enumerate(concurrent.futures.as_completed(futures), start=1):
                index = futures[future]
                try:
                    results[index] = future.result()
                except Exception as exc:
                    _, record_id, system, family, _ = tasks[index]
                    message = f"worker failed: {exc}"
                    results[index] = (index, make_entry(record_id, system, family, error=message),
                                      [f"{record_id}: {message}"], [])
                self._progress(done, len(tasks), results[index])
        return results

    def _progress(self, done, total, result):
        _, entry, errors, _ = result
        c = entry.get("classification")
        if entry.get("error"):
            self._log(f"({done}/{total}) ❌ {entry['id']} - {entry['error']}")
        elif errors:
            self._log(f"({done}/{total}) ⚠️ {entry['id']} - {c['set_index']}, {c['center_count']} centers")
        else:
            self._log(f"({done}/{total}) ✅ {entry['id']} - {c['set_index']}, {c['center_count']} centers")

    def _collect(self, results):
        entries, failed_identities = [], []
        for _, entry, errors, identities in results:
            entries.append(entry)
            self.erro.extend(errors)
            failed_identities.extend(identities)
        return entries, failed_identities

    def _single_record(self):
        text = ",".join(self.positional)
        try:
            return parse_coefficients(text, 1)
        except RecordParseError as e:
            self.erro.append(f"input: {e}")
            print(f"❌ {e}", file=sys.stderr)
            return None

    # -- commands ------------------------------------------------------------

    def _cmd_classify(self, with_table=False):
        system = self._single_record()
        if system is None:
            return QCenterConfig.EXIT_INPUT_ERROR
        options = self._record_options()
        if with_table:
            options["invariants"] = True
        result = evaluate_record((0, "input", system, None, options))
        entries, failed = self._collect([result])
        self._emit(ReportDocument(entries, build_summary(entries, identity_failures=failed or None)))
        return QCenterConfig.EXIT_FAILURE if self.erro else QCenterConfig.EXIT_OK

    def _cmd_invariants(self):
        return self._cmd_classify(with_table=True)

    def _cmd_batch(self):
        path = self.positional[0]
        try:
            records, parse_errors = FileHandler.read_records(path)
        except OSError as e:
            self.erro.append(f"{path}: {e}")
            print(f"❌ cannot read {path}: {e}", file=sys.stderr)
            return QCenterConfig.EXIT_INPUT_ERROR
        for e in parse_errors:
            self.erro.append(f"{path}: {e}")
            self._log(f"❌ {path}: {e}")

        self._log(f"\nClassifying {len(records)} records from {path}\n")
        options = self._record_options()
        tasks = [(i, r.id, r.system, None, options) for i, r in enumerate(records)]
        entries, failed = self._collect(self._evaluate_all(tasks))
        self._emit(ReportDocument(entries, build_summary(entries, identity_failures=failed or None)))
        return QCenterConfig.EXIT_FAILURE if self.erro else QCenterConfig.EXIT_OK

    def _cmd_corpus(self):
        options = self._record_options(oracle=True, identities=True)
        tasks = []
        for family in self.families:
            for record_id, system in family_corpus(family, self.count, self.seed):
                tasks.append((len(tasks), record_id, system, family, options))
        self._log(f"\nRunning {len(tasks)} systems from {', '.join(self.families)} (seed {self.seed})\n")
        entries, failed = self._collect(self._evaluate_all(tasks))

        regressions = None
        if "canonical" in self.families:
            self._log("\nChecking closed forms of the canonical systems")
            regressions = run_regressions(self.seed)
            for r in regressions:
                if r.passed:
                    self._log(f"✅ {r.system} {r.identity} - OK")
                else:
                    self._log(f"❌ {r.system} {r.identity} - {r.detail}")
                    self.erro.append(f"{r.system} {r.identity}: {r.detail}")

        summary = build_summary(entries, regressions, failed)
        self._emit(ReportDocument(entries, summary))
        return QCenterConfig.EXIT_FAILURE if self.erro else QCenterConfig.EXIT_OK


if __name__ == "__main__":
    sys.exit(QCenter().run())
