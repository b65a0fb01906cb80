from django.core.management.base import BaseCommand, CommandError

from dynamics.exceptions import WorkbenchError
from dynamics.runner import COMMANDS, RunConfig, record_run, run

FAILED_VERDICT = 1
WORKBENCH_ERROR = 2


class Command(BaseCommand):
    help = "Run a symbolic-dynamics workbench command"

    def add_arguments(self, parser):
        parser.add_argument("command", choices=COMMANDS)
        parser.add_argument("--shift", default="fibonacci",
                            help="substitution or presentation file, 'sturmian:a1,a2@beta', or a named shift")
        parser.add_argument("--jump", help="jump file, 'constant N' or 'first-return:K'")
        parser.add_argument("--word", help="base word w")
        parser.add_argument("--window", type=int, help="orbit segment length")
        parser.add_argument("--nmax", type=int, help="largest word or pattern length")
        parser.add_argument("--seed", type=int, help="seed for random walks and sampled checks")
        parser.add_argument("--out", help="directory for artifacts, relative to WORKBENCH_OUTPUT_DIR unless absolute")
        mode = parser.add_mutually_exclusive_group()
        mode.add_argument("--relaxed", action="store_true", help="entry block at offset K")
        mode.add_argument("--strict", action="store_true", help="entry block at offset 2K+1 (default)")
        parser.add_argument("--steps", type=int, default=1, help="cocycle exponent n")
        parser.add_argument("--at", type=int, help="trace position of the cocycle")
        parser.add_argument("--anchors", type=int, default=10, help="number of anchor words")
        parser.add_argument("--freeze", action="store_true", help="rewrite goldens from this lrscan")
        parser.add_argument("--record", action="store_true", help="store the run in the ledger")

    def handle(self, *args, **options):
        command = options["command"]
        config = None
        try:
            config = RunConfig(
                shift=options["shift"],
                jump=options["jump"],
                word=options["word"],
                window=options["window"],
                nmax=options["nmax"],
                seed=options["seed"],
                out=options["out"],
                relaxed=options["relaxed"],
                steps=options["steps"],
                at=options["at"],
                anchors=options["anchors"],
                freeze=options["freeze"],
            )
            outcome = run(command, config)
        except WorkbenchError as exc:
            if options["record"] and config is not None:
                record_run(command, config, error=exc)
            raise CommandError(exc.one_line(), returncode=WORKBENCH_ERROR) from exc

        if options["record"]:
            record_run(command, config, outcome)
        for line in outcome.lines:
            self.stdout.write(line)
        if not outcome.passed:
            raise CommandError(f"{command} verdict: FAIL", returncode=FAILED_VERDICT)
        self.stdout.write(self.style.SUCCESS(f"{command} verdict: PASS"))
