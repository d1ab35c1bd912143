from setuptools import setup, find_packages

long_description = """manetids is a deterministic discrete-event simulator of mobile ad hoc
networks running AOMDV multipath routing. It injects black hole attackers that forge route
replies and drop data, and an intrusion detection scheme whose monitor nodes audit next-hop
forwarding by overhearing and flood ALERTs that blacklist detected attackers.

Runs report packet delivery ratio, delay, normalized routing load, throughput and drop
percentage. Campaigns sweep node density, mode and seed and emit comparison tables and plot
series."""
version = '0.1.0'

with open("manetids/version.py", 'w') as f:
    f.write('# generated by setup.py\nversion = "{}"\n'.format(version))

extras = {
    'tests': ['pytest>=3.5'],
    'docs': ['sphinx<2', 'jinja2<3.1.0', 'sphinx_rtd_theme'],
}
extras['all'] = sorted(set(p for l in extras.values() for p in l))

setup(name='manetids',
      version=version,
      description='MANET black hole attack and intrusion detection simulator',
      long_description=long_description,
      long_description_content_type='text/markdown',
      license='Apache License 2.0',
      packages=[pkg for pkg in find_packages() if pkg.startswith('manetids')],
      python_requires='>=3.7',
      install_requires=[
          'numpy>=1.19',
          'scipy>=1.2.0',
          'pandas>=0.25.0',
      ],
      extras_require=extras,
      entry_points={'console_scripts': ['manetids=manetids.cli:main']},
      zip_safe=False)
