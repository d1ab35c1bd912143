import pytest

from manetids.scenario import Mode, Scenario, ScenarioError


def test_defaults_describe_density_experiment():
    s = Scenario().validate()
    assert (s.width, s.height, s.transmission_range) == (800.0, 800.0, 250.0)
    assert (s.v_min, s.v_max, s.duration) == (3.0, 30.0, 100.0)
    assert (s.attacker_count, s.ids_count, s.flow_count) == (4, 2, 10)
    assert s.cbr_rate == 3.0
    assert s.mode == Mode.NORMAL
    assert s.discovery_span == 7.0

def test_effective_counts_follow_mode():
    assert Scenario(mode=Mode.NORMAL).effective_attacker_count == 0
    assert Scenario(mode='attack').effective_attacker_count == 4
    assert Scenario(mode='attack').effective_ids_count == 0
    assert Scenario(mode=Mode.IDS).effective_ids_count == 2

def test_config_round_trip():
    s = Scenario(node_count=60, mode=Mode.IDS, seed=7, pause=1.5,
                 jitter=0.0001, staggered_join=True)
    text = s.to_config()
    assert 'mode = ids\n' in text
    assert 'staggered_join = true\n' in text
    assert Scenario.from_config(text) == s

def test_config_file_round_trip(tmp_path):
    path = tmp_path / 'cell.cfg'
    s = Scenario(node_count=20, mode=Mode.ATTACK, cbr_rate=4.0)
    s.dump(path)
    assert Scenario.load(path) == s

def test_config_comments_and_base():
    base = Scenario(seed=9)
    s = Scenario.from_config("# a density cell\n\nnode_count = 40  # nodes\n"
                             "mode = ATTACK\n", base=base)
    assert (s.node_count, s.mode, s.seed) == (40, Mode.ATTACK, 9)

@pytest.mark.parametrize('text, field', [
    ("speed = 3\n", 'speed'),
    ("node_count = many\n", 'node_count'),
    ("mode = chaos\n", 'mode'),
    ("alert_piggyback = maybe\n", 'alert_piggyback'),
    ("node_count 40\n", 'line 1'),
])
def test_config_errors_name_the_field(text, field):
    with pytest.raises(ScenarioError) as excinfo:
        Scenario.from_config(text)
    assert excinfo.value.field == field
    assert field in str(excinfo.value)

@pytest.mark.parametrize('changes, field', [
    (dict(mode=Mode.IDS, ids_count=0), 'ids_count'),
    (dict(mode=Mode.ATTACK, attacker_count=0), 'attacker_count'),
    (dict(node_count=5, attacker_count=4), 'attacker_count'),
    (dict(v_min=10.0, v_max=5.0), 'v_max'),
    (dict(jitter=0.002), 'jitter'),
    (dict(duration=0.0), 'duration'),
    (dict(confirm_window=0.001), 'confirm_window'),
    (dict(retry_limit=0), 'retry_limit'),
])
def test_validation_names_the_field(changes, field):
    with pytest.raises(ScenarioError) as excinfo:
        Scenario(**changes).validate()
    assert excinfo.value.field == field

def test_normal_mode_allows_zero_attackers():
    Scenario(mode=Mode.NORMAL, attacker_count=0).validate()

def test_from_dict_parses_strings():
    s = Scenario.from_dict({'node_count': '80', 'ids_global_view': 'yes',
                            'seq_inflation': 50})
    assert s.node_count == 80
    assert s.ids_global_view is True
    assert s.seq_inflation == 50
