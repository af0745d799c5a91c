import pytest

from invforge import corpus
from invforge.fields import FieldSpec
from invforge.groups import close_group
from invforge.linalg import Matrix


@pytest.fixture(scope="session")
def rationals():
    return FieldSpec.rationals()


@pytest.fixture(scope="session")
def icosahedral():
    """Order-120 binary icosahedral group (shared: closure is the costly part)."""
    return corpus.load_corpus_group("e8.group")


@pytest.fixture(scope="session")
def quaternion():
    return corpus.load_corpus_group("q8.group")


@pytest.fixture(scope="session")
def mu3():
    return corpus.load_corpus_group("an-split.group")


@pytest.fixture(scope="session")
def sign_group(rationals):
    return close_group([Matrix.from_rows(rationals, [[-1, 0], [0, 1]]),
                        Matrix.from_rows(rationals, [[1, 0], [0, -1]])],
                       name="signs")


@pytest.fixture(scope="session")
def s3_perm():
    return corpus.load_corpus_group("s3perm.group")


@pytest.fixture(scope="session")
def nonsplit_rotation():
    return corpus.load_corpus_group("an-nonsplit.group")
