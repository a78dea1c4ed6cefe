"""
County vaccination extremes over six months
===========================================

Runs the county pipeline on the bundled offline fixtures: join the CDC
vaccination table with JHU case, death and population tables, keep the
contiguous states, and plot the least and most vaccinated tenth of
counties on the first of each month.

Point the source keys at the real downloads (or URLs) to run it on live
data; ``polarpcp covid --help`` lists them.
"""

from polarpcp import cli

from _out import OUT

cfg = {key: default for key, (default, _, _) in cli.COVID_KEYS.items()}
cfg.update(cli.fixture_sources(), out_dir=str(OUT / "covid"))

result = cli.run_covid(cfg)
for date in result["panel"].dates:
    section = result["panel"].cross_section(date)
    vacc = sorted(section.column("vaccination_percent"))
    print(f"{date}: {section.n} counties, median vaccination {vacc[section.n // 2]:.1f}%")
print("wrote", result["svg"])
