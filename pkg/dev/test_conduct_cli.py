# noinspection PyPackageRequirements
import pytest as pt
import os
import composite_sums.conduct_cli as co_cli
import composite_sums.conductivity as co
import composite_sums.features as f
import composite_sums.manifest as m
import dev.utils as u


def test_help(mocker):
    u.assert_help(mocker=mocker, module=co_cli, subcommand='conduct')


@pt.fixture(name='array_path')
def get_array_path(in_tmp_dir, hexagonal_array):
    os.makedirs('hexagonal')
    hexagonal_array.save_to_json(file_path=os.path.join('hexagonal', 'array.json'))
    yield os.path.join('hexagonal', 'array.json')


def _parse(content: str) -> tuple[str, list[list[str]]]:
    header, *rows = content.splitlines()
    return header, [row.split(',') for row in rows]


def test_hexagonal_array(mocker, array_path: str, hexagonal_array):
    u.run_main(mocker=mocker, module=co_cli, argv=['conduct', array_path, '--lambda-f=3', '--q-max=5', '--output=series.csv'])
    header, rows = _parse(content=u.read_text(file_path='series.csv'))
    assert header == 'sample,q,b_q_re,b_q_im,lambda'
    assert [row[:2] for row in rows] == [['array', str(q)] for q in range(6)]
    rho, nu = co.contrast(lambda_f=3.0), hexagonal_array.concentration
    for q, row in enumerate(rows):
        b_q_re, b_q_im, partial_sum = (float(value) for value in row[2:])
        assert b_q_re == pt.approx(rho ** q, abs=1e-8)
        assert abs(b_q_im) < 1e-8
        assert partial_sum == pt.approx(1 + 2 * rho * nu * sum((rho * nu) ** j for j in range(q + 1)), rel=1e-8)
    manifest = m.RunManifest.load(file_path='series.csv.manifest.json')
    assert manifest.argv == ['conduct', array_path, '--lambda-f=3', '--q-max=5', '--output=series.csv', '--tolerance=1e-10']
    assert manifest.inputs == [array_path]


def test_print(mocker, array_path: str, small_configs):
    for i, config in enumerate(small_configs):
        config.save_to_json(file_path=os.path.join('rsa', f'sample_{i}.json'))
    print_mock: mocker.MagicMock = mocker.patch('builtins.print')
    u.run_main(mocker=mocker, module=co_cli, argv=['conduct', 'rsa/*.json'])
    [[content], _] = print_mock.call_args
    _, rows = _parse(content=content)
    assert len(rows) == len(small_configs) * (co.DEFAULT_Q_MAX + 1)
    for i, config in enumerate(small_configs):
        ev = f.get_evaluator(lattice=config.lattice, tolerance=1e-10)
        expected = co.effective_conductivity(config=config, lambda_f=10.0, ev=ev)
        [last_row] = [row for row in rows if row[0] == f'sample_{i}' and row[1] == str(co.DEFAULT_Q_MAX)]
        assert float(last_row[4]) == pt.approx(expected, rel=1e-12)


test_exit_code_data = [
    (['conduct', 'missing.json'], 2),
    (['conduct', 'hexagonal/array.json', '--lambda-f=high'], 2),
    (['conduct', 'hexagonal/array.json', '--lambda-f=-1'], 3),
    (['conduct', 'hexagonal/array.json', '--q-max=-1'], 3),
    (['conduct', 'hexagonal/array.json', '--tolerance=0'], 2)]


@pt.mark.parametrize('argv,expected_code', test_exit_code_data)
def test_exit_code(mocker, array_path: str, argv: list, expected_code: int):
    u.assert_exit_code(mocker=mocker, module=co_cli, argv=argv, expected_code=expected_code)
