# noinspection PyPackageRequirements
import pytest as pt
import json
import os
import numpy as np
import composite_sums.configuration as c
import composite_sums.features as f
import composite_sums.microgen as mg


def assert_exception(expected_message: str, exception: pt.ExceptionInfo):
    actual_message = str(exception.value)
    assert actual_message == expected_message


def assert_warning(message: str, caplog):
    [record] = caplog.records
    assert record.levelname == 'WARNING'
    assert record.message == message


def assert_error(message: str, caplog):
    [record] = [record for record in caplog.records if record.levelname == 'ERROR']
    assert record.message == message


def assert_call_args(function_mock, expected_call_args_list: list, do_kwargs: bool):
    actual_call_args_list = function_mock.call_args_list
    assert len(actual_call_args_list) == len(expected_call_args_list)
    for actual_call_args, expected_call_args in zip(actual_call_args_list, expected_call_args_list):
        if do_kwargs:
            assert actual_call_args.kwargs == expected_call_args
        else:
            assert actual_call_args.args == expected_call_args


def assert_help(mocker, module, subcommand: str):
    for help_arg in ['-h', '--help']:
        mocker.patch('sys.argv', ['composite_sums', subcommand, help_arg])
        print_mock: mocker.MagicMock = mocker.patch('builtins.print')
        with pt.raises(SystemExit):
            module.main()
        print_mock.assert_any_call(module.__doc__.strip('\n'))


def run_main(mocker, module, argv: list[str]):
    mocker.patch('sys.argv', ['composite_sums'] + argv)
    module.main()


def assert_exit_code(mocker, module, argv: list[str], expected_code: int):
    mocker.patch('sys.argv', ['composite_sums'] + argv)
    with pt.raises(SystemExit) as error:
        module.main()
    assert error.value.code == expected_code


def write_spec(file_path: str, **spec_fields) -> str:
    with open(file_path, 'w') as file:
        json.dump(spec_fields, file)
    return file_path


def write_configs(directory: str, spec: mg.GeneratorSpec, seeds: list[int]) -> list[str]:
    """Generates one configuration per seed into ``directory`` and returns their paths."""
    os.makedirs(directory, exist_ok=True)
    file_paths = list[str]()
    for i, seed in enumerate(seeds):
        config = mg.generate(spec=spec, seed=seed)
        file_path = os.path.join(directory, f'sample_{i:04d}.json')
        config.save_to_json(file_path=file_path)
        file_paths.append(file_path)
    return file_paths


def read_text(file_path: str) -> str:
    with open(file_path, 'r', encoding='utf-8', newline='') as file:
        return file.read()


def load_config(file_path: str) -> c.DiskConfiguration:
    return c.DiskConfiguration.load(file_path=file_path)


def make_feature_table(n_per_class: int = 12, seed: int = 0) -> f.FeatureTable:
    """Three classes a, b and c of X_3 vectors whose entries are shifted by 0, 3 and 6 along 1 + i."""
    rng = np.random.default_rng(seed)
    orders = f.xq_orders(q=3)
    samples, labels, vectors = list[str](), list[str](), list[f.FeatureVector]()
    for label, shift in (('a', 0.0), ('b', 3.0), ('c', 6.0)):
        for i in range(n_per_class):
            values = rng.normal(size=len(orders)) + 1j * rng.normal(size=len(orders)) + shift * (1 + 1j)
            vectors.append(f.FeatureVector(entries=dict(zip(orders, values)), order_q=3))
            samples.append(f'{label}_{i}')
            labels.append(label)
    return f.FeatureTable.from_vectors(samples=samples, labels=labels, vectors=vectors)
