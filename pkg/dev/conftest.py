# noinspection PyPackageRequirements
import pytest as pt
import os
import shutil as sh
import composite_sums.lattice as la
import composite_sums.microgen as mg


@pt.fixture(name='square', scope='session')
def get_square():
    return la.Lattice.square()


@pt.fixture(name='hexagonal', scope='session')
def get_hexagonal():
    return la.Lattice.hexagonal()


@pt.fixture(name='square_ev', scope='session')
def get_square_ev(square):
    return la.EisensteinEvaluator(lattice=square)


@pt.fixture(name='hexagonal_ev', scope='session')
def get_hexagonal_ev(hexagonal):
    return la.EisensteinEvaluator(lattice=hexagonal)


@pt.fixture(name='small_configs', scope='session')
def get_small_configs():
    """Random polydisperse configurations of 1 to 4 disks on the square lattice."""
    return [
        mg.generate(spec=mg.GeneratorSpec(protocol='rsa', n=n, concentration=0.3, radii_law='uniform'), seed=seed)
        for n, seed in ((1, 11), (2, 12), (3, 13), (4, 14))]


@pt.fixture(name='hexagonal_array', scope='session')
def get_hexagonal_array():
    return mg.generate(spec=mg.GeneratorSpec(protocol='hexagonal', n=4, concentration=0.4))


@pt.fixture(name='output_file', params=['dir/subdir/file.csv', 'dir/file.csv', './file.csv', 'file.csv'])
def get_output_file(request):
    output_file: str = request.param
    yield output_file
    os.remove(output_file)
    sh.rmtree('dir', ignore_errors=True)


@pt.fixture(name='in_tmp_dir')
def get_in_tmp_dir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    yield tmp_path


@pt.fixture(name='json_file_path', params=['dir/subdir/file.json', 'dir/file.json', './file.json', 'file.json', 'archive.zip:file.json'])
def get_json_file_path(request):
    json_file_path: str = request.param
    yield json_file_path
    if '.zip:' in json_file_path:
        os.remove('archive.zip')
    else:
        os.remove(json_file_path)
    sh.rmtree('dir', ignore_errors=True)
