# noinspection PyPackageRequirements
import pytest as pt
import composite_sums.__main__ as m
import composite_sums.latsum_cli as ls_cli
import composite_sums.generate_cli as g_cli
import composite_sums.features_cli as f_cli
import composite_sums.classify_cli as cl_cli
import composite_sums.conduct_cli as co_cli
import composite_sums.irregularity_cli as ir_cli
import composite_sums.scan_pairs_cli as sp_cli
import composite_sums.fit_curve_cli as fc_cli
import composite_sums.replay_cli as r_cli
import dev.utils as u


def test_help(mocker):
    mocker.patch('sys.argv', ['composite_sums', '--full-help'])
    print_mock: mocker.MagicMock = mocker.patch('builtins.print')
    m.main()
    delimiter: str = '-'*80
    expected_print_call_args = [(m.__doc__,)]
    for command_module in (ls_cli, g_cli, f_cli, cl_cli, co_cli, ir_cli, sp_cli, fc_cli, r_cli):
        expected_print_call_args.extend([(delimiter,), (command_module.__doc__,)])
    u.assert_call_args(function_mock=print_mock, expected_call_args_list=expected_print_call_args, do_kwargs=False)
    for help_arg in (['--help'], ['-h'], [], ['unknown-command']):
        help_args = ['composite_sums']
        help_args.extend(help_arg)
        mocker.patch('sys.argv', help_args)
        print_mock.reset_mock()
        m.main()
        print_mock.assert_called_once_with(m.__doc__)


def test_version(mocker):
    mocker.patch('sys.argv', ['composite_sums', '--version'])
    version_mock = 'version mock'
    mocker.patch('composite_sums.__main__.__version__', version_mock)
    print_mock: mocker.MagicMock = mocker.patch('builtins.print')
    m.main()
    print_mock.assert_called_once_with(version_mock)
    print_mock.reset_mock()
    mocker.patch('sys.argv', ['composite_sums', '-v'])
    m.main()
    print_mock.assert_called_once_with(version_mock)


test_dispatch_data = [
    ('latsum', 'composite_sums.latsum_cli.main'), ('generate', 'composite_sums.generate_cli.main'),
    ('features', 'composite_sums.features_cli.main'), ('classify', 'composite_sums.classify_cli.main'),
    ('conduct', 'composite_sums.conduct_cli.main'), ('irregularity', 'composite_sums.irregularity_cli.main'),
    ('scan-pairs', 'composite_sums.scan_pairs_cli.main'), ('fit-curve', 'composite_sums.fit_curve_cli.main'),
    ('replay', 'composite_sums.replay_cli.main')]


@pt.mark.parametrize('command,main_path', test_dispatch_data)
def test_dispatch(mocker, command: str, main_path: str):
    main_mock: mocker.MagicMock = mocker.patch(main_path)
    mocker.patch('sys.argv', ['composite_sums', command, '--help'])
    m.main()
    main_mock.assert_called_once_with()


def test_end_to_end(mocker, in_tmp_dir):
    u.write_spec('spec.json', protocol='rsa', N=4, concentration=0.3)
    u.run_main(mocker=mocker, module=m, argv=['generate', 'spec.json', '--count=2', '--output=rsa'])
    u.run_main(mocker=mocker, module=m, argv=['features', 'rsa/sample_*.json', '--q=3', '--output=features.csv'])
    print_mock: mocker.MagicMock = mocker.patch('builtins.print')
    u.run_main(mocker=mocker, module=m, argv=['irregularity', 'rsa/sample_*.json'])
    [[content], _] = print_mock.call_args
    assert [row.split(',')[:2] for row in content.splitlines()[1:]] == [['sample_0000', 'rsa'], ['sample_0001', 'rsa']]
    header = u.read_text(file_path='features.csv').splitlines()[0]
    assert header.startswith('sample,label,e_2_re,e_2_2_re,')
