import pytest

collect_ignore = ["setup.py"]


def pytest_addoption(parser):
    parser.addoption(
        "--runslow",
        action="store_true",
        default=False,
        help="also run the exhaustive oracle and n=7 sweeps",
    )


def pytest_collection_modifyitems(session, config, items):
    # Exhaustive sweeps take minutes; run them only on request
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)
