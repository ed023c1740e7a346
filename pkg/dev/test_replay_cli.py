# noinspection PyPackageRequirements
import pytest as pt
import json
import os
import shutil as sh
import composite_sums as cs
import composite_sums.microgen as mg
import composite_sums.replay_cli as r_cli
import composite_sums.__main__ as main_module
import dev.utils as u


def test_help(mocker):
    u.assert_help(mocker=mocker, module=r_cli, subcommand='replay')


def _edit_manifest(file_path: str, **changes) -> None:
    with open(file_path, 'r') as file:
        json_object: dict = json.load(file)
    json_object.update(changes)
    with open(file_path, 'w') as file:
        json.dump(json_object, file)


def _replay_elsewhere(mocker, monkeypatch, manifest_path: str) -> None:
    manifest_path = os.path.abspath(manifest_path)
    working_directory = os.getcwd()
    os.makedirs('elsewhere', exist_ok=True)
    monkeypatch.chdir('elsewhere')
    u.run_main(mocker=mocker, module=r_cli, argv=['replay', manifest_path])
    assert os.getcwd() == working_directory


def test_replay_latsum(mocker, monkeypatch, in_tmp_dir):
    u.run_main(mocker=mocker, module=main_module, argv=['latsum', '--lattice=hexagonal', '--n-max=10', '--output=sums.csv'])
    expected = u.read_text(file_path='sums.csv')
    os.remove('sums.csv')
    _replay_elsewhere(mocker=mocker, monkeypatch=monkeypatch, manifest_path='sums.csv.manifest.json')
    assert u.read_text(file_path='sums.csv') == expected


def test_replay_generate(mocker, monkeypatch, in_tmp_dir):
    u.write_spec('spec.json', protocol='mc_walk', N=5, concentration=0.35, cycles=3, step_law='Z2')
    monkeypatch.setenv('COMPOSITE_SUMS_SEED', '21')
    u.run_main(mocker=mocker, module=main_module, argv=['generate', 'spec.json', '--count=2', '--output=samples'])
    expected = [u.read_text(file_path=os.path.join('samples', f'sample_{i:04d}.json')) for i in range(2)]
    sh.copy(os.path.join('samples', 'manifest.json'), 'generate.manifest.json')
    sh.rmtree('samples')
    monkeypatch.delenv('COMPOSITE_SUMS_SEED')
    _replay_elsewhere(mocker=mocker, monkeypatch=monkeypatch, manifest_path='generate.manifest.json')
    assert os.path.isdir('samples')
    actual = [u.read_text(file_path=os.path.join('samples', f'sample_{i:04d}.json')) for i in range(2)]
    assert actual == expected


def test_replay_features(mocker, monkeypatch, in_tmp_dir):
    u.write_configs(directory='rsa', spec=mg.GeneratorSpec(protocol='rsa', n=4, concentration=0.25), seeds=[8, 9])
    monkeypatch.setenv('COMPOSITE_SUMS_TOLERANCE', '1e-12')
    u.run_main(mocker=mocker, module=main_module, argv=['features', 'rsa/*.json', '--q=4', '--output=features.csv'])
    expected = u.read_text(file_path='features.csv')
    monkeypatch.delenv('COMPOSITE_SUMS_TOLERANCE')
    _replay_elsewhere(mocker=mocker, monkeypatch=monkeypatch, manifest_path='features.csv.manifest.json')
    assert u.read_text(file_path='features.csv') == expected


def test_version_mismatch(mocker, monkeypatch, in_tmp_dir, caplog):
    u.run_main(mocker=mocker, module=main_module, argv=['latsum', '--n-max=4', '--output=sums.csv'])
    _edit_manifest(file_path='sums.csv.manifest.json', version='0.0.1')
    _replay_elsewhere(mocker=mocker, monkeypatch=monkeypatch, manifest_path='sums.csv.manifest.json')
    [record] = [record for record in caplog.records if record.levelname == 'WARNING']
    assert record.message == f'The manifest was written by version 0.0.1 but this is version {cs.__version__}'


def test_missing_working_directory(mocker, in_tmp_dir, caplog):
    u.run_main(mocker=mocker, module=main_module, argv=['latsum', '--n-max=4', '--output=sums.csv'])
    missing = os.path.join(os.getcwd(), 'removed')
    _edit_manifest(file_path='sums.csv.manifest.json', working_directory=missing)
    u.assert_exit_code(mocker=mocker, module=r_cli, argv=['replay', 'sums.csv.manifest.json'], expected_code=2)
    u.assert_error(message=f'The working directory of the recorded run does not exist: {missing}', caplog=caplog)


def test_replay_of_replay(mocker, in_tmp_dir, caplog):
    u.run_main(mocker=mocker, module=main_module, argv=['latsum', '--n-max=4', '--output=sums.csv'])
    _edit_manifest(file_path='sums.csv.manifest.json', command='replay', argv=['replay', 'sums.csv.manifest.json'])
    u.assert_exit_code(mocker=mocker, module=r_cli, argv=['replay', 'sums.csv.manifest.json'], expected_code=2)
    u.assert_error(message='A replay cannot be replayed', caplog=caplog)


def test_invalid_manifest(mocker, in_tmp_dir):
    with open('manifest.json', 'w') as file:
        json.dump({'command': 'latsum'}, file)
    u.assert_exit_code(mocker=mocker, module=r_cli, argv=['replay', 'manifest.json'], expected_code=3)
    u.assert_exit_code(mocker=mocker, module=r_cli, argv=['replay', 'missing.json'], expected_code=2)
