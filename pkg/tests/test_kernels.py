import pytest

from scbench.errors import InvalidConfigError
from scbench.kernels import ALGORITHM_NAMES, Algorithm, kernel_registry, parse_algorithm


class TestParseAlgorithm:
    @pytest.mark.parametrize("algorithm", list(Algorithm))
    def test_members_pass_through(self, algorithm):
        assert parse_algorithm(algorithm) is algorithm

    @pytest.mark.parametrize("name,expected", [
        ("fft", Algorithm.FFT),
        (" PDFT ", Algorithm.PDFT),
        ("pdft-l2", Algorithm.PDFT_L2),
    ])
    def test_names(self, name, expected):
        assert parse_algorithm(name) is expected

    def test_unknown(self):
        with pytest.raises(InvalidConfigError, match="Unknown algorithm"):
            parse_algorithm("fht")


class TestKernelRegistry:
    def test_names(self):
        assert kernel_registry.get_names() == ALGORITHM_NAMES

    def test_only_pdft_takes_blocks(self):
        assert [a for a in Algorithm if kernel_registry.get(a).uses_blocks] == [Algorithm.PDFT]

    def test_descriptions_cover_every_kernel(self):
        lines = kernel_registry.get_descriptions().splitlines()
        assert [line.split(":")[0] for line in lines] == ALGORITHM_NAMES

    @pytest.mark.parametrize("algorithm,n,l_blocks", [
        ("fft", 12, None),
        ("pdft_l2", 7, None),
        ("pdft", 10, None),
        ("pdft", 10, 3),
        ("dft", 0, None),
    ])
    def test_check_size_rejects(self, algorithm, n, l_blocks):
        with pytest.raises(InvalidConfigError):
            kernel_registry.get(algorithm).check_size(n, l_blocks)

    def test_check_size_accepts(self):
        kernel_registry.get(Algorithm.PDFT).check_size(12, 3)
        kernel_registry.get("fft").check_size(1024)
