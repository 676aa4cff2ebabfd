try:
    from setuptools import setup, find_packages, findall
except ImportError:
    print ("Please install setuptools before installing this package")
    raise

setup(
    name='specsense',
    version='0.1.0.dev0',
    description=(
        'Wideband spectrum sensing: synthetic multi-emitter I/Q scenes,'
        ' log-warped spectrograms, coarse time-frequency proposals,'
        ' narrowband purification and detection metrics'),
    long_description="Check the project homepage for details",
    keywords=[
        'specsense', 'spectrum sensing', 'sdr', 'software defined radio',
        'iq', 'stft', 'spectrogram', 'signal detection', 'dsp',
        'fir filter', 'decimation', 'average precision'],

    packages=find_packages(),
    data_files=[
        ('conf', findall('conf')),
        ('specsense/examples', findall('specsense/examples'))
    ],
    python_requires='>=3.8',

    install_requires=[
        'argparse_tools>=1.0.5',
        'colorlog>=2.2.0',
        'numpy>=1.20',
        'scipy>=1.6',
        'simplejson>=3.4.1',
    ],

    extras_require={
        'testing': [
            'pytest>=6.0', 'pytest-cov', 'pycodestyle>=2.5',
            'pyflakes>=0.8.1'],
    },

    zip_safe=False,

    entry_points={
        'console_scripts': [
            'specsense = specsense.__main__:go',
        ],
    },
)
