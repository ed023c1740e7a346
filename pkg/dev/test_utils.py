# noinspection PyPackageRequirements
import pytest as pt
import os
import jsonschema as js
# noinspection PyProtectedMember
import composite_sums._utils as utils
import dev.utils as u


@pt.mark.parametrize('comma_separated_list', [',,', ',', ''])
def test_parse_input_sequence_comma_exception(comma_separated_list: str):
    with pt.raises(utils.UsageError) as error:
        utils.parse_input_sequence(input_source=comma_separated_list)
    expected_message = f'Empty list provided from comma separated list: "{comma_separated_list}"'
    u.assert_exception(expected_message=expected_message, exception=error)


@pt.mark.parametrize('stdin_input', ['', '\n', '\t\t', '\n\n', '\t \n \t', ' \n \n\t\t \t\n'])
def test_parse_input_sequence_stdin_exception(mocker, stdin_input: str):
    stdin_mock: mocker.MagicMock = mocker.patch('composite_sums._utils.sys.stdin.read', return_value=stdin_input)
    with pt.raises(utils.UsageError) as error:
        utils.parse_input_sequence(input_source='-')
    stdin_mock.assert_called_once_with()
    u.assert_exception(expected_message='Empty list provided from standard input', exception=error)


def test_parse_input_sequence(mocker):
    assert utils.parse_input_sequence(input_source=' a.json, ,b.json,') == ['a.json', 'b.json']
    mocker.patch('composite_sums._utils.sys.stdin.read', return_value='\nrsa/*.json\n\tmc/*.json \n')
    assert utils.parse_input_sequence(input_source='-') == ['rsa/*.json', 'mc/*.json']


def test_expand_paths(in_tmp_dir):
    for directory, name in (('rsa', 'sample_0001.json'), ('rsa', 'sample_0000.json'), ('mc', 'sample_0000.json')):
        os.makedirs(directory, exist_ok=True)
        with open(os.path.join(directory, name), 'w') as file:
            file.write('{}')
    paths = utils.expand_paths(input_source='rsa/*.json,mc/sample_0000.json,rsa/sample_0000.json')
    assert paths == [os.path.join('rsa', 'sample_0000.json'), os.path.join('rsa', 'sample_0001.json'), 'mc/sample_0000.json']
    with pt.raises(utils.UsageError) as error:
        utils.expand_paths(input_source='rsa/*.json,missing.json')
    u.assert_exception(expected_message='Input file not found: missing.json', exception=error)
    with pt.raises(utils.UsageError) as error:
        utils.expand_paths(input_source='other/*.json')
    u.assert_exception(expected_message='No input files match "other/*.json"', exception=error)


def test_save_output(output_file: str):
    utils.save_output(output_target=output_file, output_content='n,re,im\n2,3.0,0.0\n')
    assert u.read_text(file_path=output_file) == 'n,re,im\n2,3.0,0.0\n'


def test_print_or_save(mocker):
    print_mock: mocker.MagicMock = mocker.patch('builtins.print')
    utils.print_or_save(output_target=None, output_content='content')
    print_mock.assert_called_once_with('content')


def test_to_csv():
    assert utils.to_csv(header=['a', 'b'], rows=[[0.1, 1], ['x', 1 / 3]]) == 'a,b\n0.1,1\nx,0.3333333333333333\n'


def test_read_csv(tmp_path):
    file_path = tmp_path / 'points.csv'
    file_path.write_text('x,y\n1,2\n\n3,4\n')
    assert utils.read_csv(file_path=str(file_path)) == (['x', 'y'], [['1', '2'], ['3', '4']])
    empty = tmp_path / 'empty.csv'
    empty.write_text('')
    with pt.raises(ValueError) as error:
        utils.read_csv(file_path=str(empty))
    u.assert_exception(expected_message=f'The CSV file at {empty} is empty', exception=error)


test_get_setting_data = [
    ({'--seed': '7'}, '3', 7),
    ({'--seed': None}, '3', 3),
    ({'--seed': None}, None, 0),
    ({}, None, 0)]


@pt.mark.parametrize('args,env_value,expected', test_get_setting_data)
def test_get_setting(monkeypatch, args: dict, env_value: str | None, expected: int):
    if env_value is None:
        monkeypatch.delenv(utils.SEED_ENV, raising=False)
    else:
        monkeypatch.setenv(utils.SEED_ENV, env_value)
    assert utils.get_setting(args=args, option='--seed', env_var=utils.SEED_ENV, default=0, value_type=int) == expected


def test_get_run_settings(monkeypatch):
    monkeypatch.setenv(utils.THREADS_ENV, '4')
    monkeypatch.setenv(utils.TOLERANCE_ENV, '1e-8')
    monkeypatch.delenv(utils.SEED_ENV, raising=False)
    assert utils.get_run_settings(args={'--seed': None, '--threads': None}, default_seed=9) == (9, 4, 1e-8)
    assert utils.get_run_settings(args={'--seed': '2', '--threads': '1', '--tolerance': '1e-6'}) == (2, 1, 1e-6)


test_invalid_settings_data = [
    ({'--threads': '0'}, {}, 'The number of threads must be at least 1, got 0'),
    ({'--seed': '-1'}, {}, 'The seed must be non-negative and the tolerance positive, got -1 and 1e-10'),
    ({'--seed': 'abc'}, {}, 'Invalid value for --seed: "abc"'),
    ({}, {utils.TOLERANCE_ENV: 'tiny'}, 'Invalid value for COMPOSITE_SUMS_TOLERANCE: "tiny"')]


@pt.mark.parametrize('args,env,expected_message', test_invalid_settings_data)
def test_invalid_settings(monkeypatch, args: dict, env: dict, expected_message: str):
    for env_var in (utils.SEED_ENV, utils.THREADS_ENV, utils.TOLERANCE_ENV):
        monkeypatch.delenv(env_var, raising=False)
    for env_var, value in env.items():
        monkeypatch.setenv(env_var, value)
    with pt.raises(utils.UsageError) as error:
        utils.get_run_settings(args=args)
    u.assert_exception(expected_message=expected_message, exception=error)


def _raise(exception: Exception):
    def main():
        raise exception
    return main


test_handle_errors_data = [
    (utils.UsageError('Input file not found: x.json'), 2, 'Input file not found: x.json'),
    (FileNotFoundError('No such file'), 2, 'No such file'),
    (ValueError('q must be between 1 and 12, got 13'), 3, 'q must be between 1 and 12, got 13'),
    (RuntimeError('RSA saturated'), 3, 'RSA saturated'),
    (ZeroDivisionError('division by zero'), 3, 'division by zero')]


@pt.mark.parametrize('exception,expected_code,expected_message', test_handle_errors_data)
def test_handle_errors(caplog, exception: Exception, expected_code: int, expected_message: str):
    with pt.raises(SystemExit) as error:
        utils.handle_errors(_raise(exception=exception))()
    assert error.value.code == expected_code
    u.assert_error(message=expected_message, caplog=caplog)


def test_handle_validation_error(caplog):
    with pt.raises(SystemExit) as error:
        utils.handle_errors(_raise(exception=js.exceptions.ValidationError('bad')))()
    assert error.value.code == 3
    assert not caplog.records


def test_parse_args_usage_error(mocker, capsys):
    mocker.patch('sys.argv', ['composite_sums', 'latsum', '--unknown'])
    with pt.raises(SystemExit) as error:
        utils.parse_args(doc='Usage:\n    composite_sums latsum [--n-max=<n-max>]\n')
    assert error.value.code == 2
    assert 'Usage:' in capsys.readouterr().err
